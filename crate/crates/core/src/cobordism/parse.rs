use super::{CobordismWord, Generator, Layer};
use crate::error::{Error, Result};

#[derive(Debug, PartialEq)]
enum Token {
    Name(String),
    Comma,
    Semicolon,
}

struct Spanned {
    token: Token,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (l, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, col) = (l + 1, i + 1);
            if c.is_whitespace() {
                i += 1;
            } else if c == ',' || c == ';' {
                let token = if c == ',' {
                    Token::Comma
                } else {
                    Token::Semicolon
                };
                out.push(Spanned { token, line, col });
                i += 1;
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let name = chars[start..i].iter().collect();
                out.push(Spanned {
                    token: Token::Name(name),
                    line,
                    col,
                });
            } else {
                return Err(Error::Syntax {
                    line,
                    col,
                    message: format!("unexpected character {c:?}"),
                });
            }
        }
    }
    Ok(out)
}

/// Parses `word := layer (";" layer)*`, `layer := gen ("," gen)*`.
pub fn parse_word(text: &str) -> Result<CobordismWord> {
    let tokens = tokenize(text)?;
    let end = match tokens.last() {
        Some(t) => (t.line, t.col + 1),
        None => (1, 1),
    };
    let mut layers: Vec<Layer> = vec![Vec::new()];
    let mut expect_gen = true;
    for t in &tokens {
        match (&t.token, expect_gen) {
            (Token::Name(name), true) => {
                let g = Generator::from_keyword(name).ok_or_else(|| Error::Syntax {
                    line: t.line,
                    col: t.col,
                    message: format!("unknown generator {name:?}"),
                })?;
                layers.last_mut().unwrap().push(g);
                expect_gen = false;
            }
            (Token::Comma, false) => expect_gen = true,
            (Token::Semicolon, false) => {
                layers.push(Vec::new());
                expect_gen = true;
            }
            (token, true) => {
                return Err(Error::Syntax {
                    line: t.line,
                    col: t.col,
                    message: format!("expected a generator, found {}", describe(token)),
                })
            }
            (token, false) => {
                return Err(Error::Syntax {
                    line: t.line,
                    col: t.col,
                    message: format!("expected ',' or ';', found {}", describe(token)),
                })
            }
        }
    }
    if expect_gen {
        return Err(Error::Syntax {
            line: end.0,
            col: end.1,
            message: "expected a generator, found end of input".into(),
        });
    }
    CobordismWord::new(layers)
}

fn describe(token: &Token) -> String {
    match token {
        Token::Name(n) => format!("{n:?}"),
        Token::Comma => "','".into(),
        Token::Semicolon => "';'".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn widths() {
        let sphere = parse_word("cup ; cap").unwrap();
        assert_eq!((sphere.in_width(), sphere.out_width()), (0, 0));
        let torus = parse_word("cup;comul;mul;cap").unwrap();
        assert_eq!(torus.layers().len(), 4);
        assert_eq!(torus.boundary_widths(), vec![0, 1, 2, 1, 0]);
    }

    #[test]
    fn width_mismatch_names_the_layer() {
        assert_eq!(
            parse_word("mul ; comul ; cap").unwrap_err(),
            Error::WidthMismatch {
                layer: 3,
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(
            parse_word("cup ; cop").unwrap_err(),
            Error::Syntax {
                line: 1,
                col: 7,
                ..
            }
        ));
        assert!(matches!(
            parse_word("id ,\n, id").unwrap_err(),
            Error::Syntax {
                line: 2,
                col: 1,
                ..
            }
        ));
        assert!(matches!(parse_word("").unwrap_err(), Error::Syntax { .. }));
        assert!(matches!(
            parse_word("id ;").unwrap_err(),
            Error::Syntax { .. }
        ));
        assert!(matches!(
            parse_word("id id").unwrap_err(),
            Error::Syntax { .. }
        ));
        assert!(matches!(
            parse_word("id # x").unwrap_err(),
            Error::Syntax { col: 4, .. }
        ));
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(
            parse_word("  comul,id\n;\tid ,mul ").unwrap(),
            parse_word("comul , id ; id , mul").unwrap()
        );
    }

    proptest! {
        #[test]
        fn display_round_trips(seed in any::<u64>(), width in 1usize..5, depth in 1usize..8) {
            let cfg = super::super::RandomWordConfig { max_width: width, max_layers: depth };
            let w = super::super::random_word(seed, &cfg);
            prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w);
        }
    }
}
