use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use tqft2d::cobordism::{parse_word, CobordismWord, RandomWordConfig};
use tqft2d::decompose::{classify, decompose};
use tqft2d::eval::{closed_invariant, verify_direct_sum, EvalConfig, Evaluator, Report};
use tqft2d::format::{self, AlgebraSpec};
use tqft2d::frobenius::FrobeniusAlgebra;
use tqft2d::fuzz::{cerf_fuzz, oracle_fuzz, FuzzConfig, FuzzOutcome};
use tqft2d::{families, Error, FieldKind, Fp, Rational, Scalar};

use crate::{Command, FuzzArgs};

/// Error carrying the process exit status: 2 for unreadable or malformed input, 1 for input
/// that parses but fails validation.
pub struct Failure {
    pub error: Box<dyn fmt::Display>,
    usage: bool,
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        if self.usage {
            2
        } else {
            1
        }
    }

    fn usage(message: impl fmt::Display + 'static) -> Self {
        Failure {
            error: Box::new(message),
            usage: true,
        }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Format(_)
            | Error::ScalarParse { .. }
            | Error::Syntax { .. }
            | Error::WidthMismatch { .. }
            | Error::DimensionMismatch { .. }
            | Error::FieldUnsupported { .. }
            | Error::EmptyAlgebra
    )
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let usage = is_usage_error(&e);
        Failure {
            error: Box::new(e),
            usage,
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn status(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Parses `$text` with the scalar type named by its `field` entry and binds the parse
/// result (not yet unwrapped) to `$spec`.
macro_rules! with_spec {
    ($text:expr, $spec:ident => $body:expr) => {
        match format::peek_field(&$text)? {
            FieldKind::Rational => {
                let $spec = format::parse_algebra::<Rational>(&$text);
                $body
            }
            FieldKind::Prime(_) => {
                let $spec = format::parse_algebra::<Fp>(&$text);
                $body
            }
        }
    };
}

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Check(a) => {
            let text = read(&a.algebra)?;
            with_spec!(text, spec => check(spec))
        }
        Command::Decompose(a) => {
            let text = read(&a.algebra)?;
            with_spec!(text, spec => {
                let f = spec?.frobenius()?;
                print!("{}", format::serialize_decomposition(&decompose(&f)?));
                Ok(ExitCode::SUCCESS)
            })
        }
        Command::Classify(a) => {
            let text = read(&a.algebra)?;
            with_spec!(text, spec => {
                let f = spec?.frobenius()?;
                let c = classify(&f)?;
                print!("{}", format::serialize_classification(&f, &c));
                Ok(ExitCode::SUCCESS)
            })
        }
        Command::Eval {
            algebra,
            word,
            normal,
            size,
        } => {
            let text = read(&algebra.algebra)?;
            let w = parse_word(&word)?;
            let config = EvalConfig {
                size_cap: size.size_cap,
            };
            with_spec!(text, spec => {
                let f = spec?.frobenius()?;
                let ev = Evaluator::new(&f, config);
                let op = if normal { ev.evaluate_normal(&w.normal_form())? } else { ev.evaluate(&w)? };
                print!("{}", format::serialize_operator(&op));
                Ok(ExitCode::SUCCESS)
            })
        }
        Command::Invariant { algebra, max_genus } => {
            let text = read(&algebra.algebra)?;
            with_spec!(text, spec => {
                let f = spec?.frobenius()?;
                println!("{}", invariant_table(&f, max_genus));
                Ok(ExitCode::SUCCESS)
            })
        }
        Command::CerfFuzz(args) => fuzz(&args, FuzzKind::Cerf),
        Command::OracleFuzz(args) => fuzz(&args, FuzzKind::Oracle),
        Command::Sumcheck {
            first,
            second,
            word,
            size,
        } => sumcheck(&first, &second, &word, size.size_cap),
        Command::Counterexample { max_genus } => counterexample(max_genus),
    }
}

fn check<T: Scalar>(spec: tqft2d::Result<AlgebraSpec<T>>) -> Outcome {
    let spec = match spec {
        Err(e) if is_usage_error(&e) => return Err(e.into()),
        Err(e) => {
            println!("FAIL algebra laws: {e}");
            return Ok(ExitCode::from(1));
        }
        Ok(spec) => spec,
    };
    let mut report = Report::default();
    report.push(
        "commutative, associative and unital",
        spec.algebra.check_laws().is_ok(),
        "",
    );
    match &spec.mu {
        None => {
            print!("{report}");
            println!("SKIP Frobenius axioms: no mu");
            return Ok(status(report.passed()));
        }
        Some(_) => match spec.frobenius() {
            Err(e) => report.push("gram matrix invertible", false, e.to_string()),
            Ok(f) => {
                report.push("gram matrix invertible", true, "");
                report.push("dual basis duality", f.check_duality(), "");
                report.push("snake identity", f.check_snake(), "");
                print!("{report}");
                if let Ok(positive) = f.check_positive_definite() {
                    println!("positive definite: {positive}");
                }
                return Ok(status(report.passed()));
            }
        },
    }
    print!("{report}");
    Ok(status(report.passed()))
}

fn invariant_table<T: Scalar>(f: &FrobeniusAlgebra<T>, max_genus: u32) -> String {
    (0..=max_genus)
        .map(|g| format!("g={g}: {}", closed_invariant(f, g)))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Copy)]
enum FuzzKind {
    Cerf,
    Oracle,
}

fn shipped_algebras() -> Vec<(String, FrobeniusAlgebra<Rational>)> {
    let two = Rational::from_integer(2.into());
    vec![
        ("s2".into(), families::simple_q(two)),
        ("n2".into(), families::n2()),
        ("qx4".into(), families::truncated_local(4)),
        ("qxy".into(), families::qxy()),
        ("sum13".into(), families::sum13()),
    ]
}

fn run_fuzz<T: Scalar>(
    name: &str,
    f: FrobeniusAlgebra<T>,
    cfg: &FuzzConfig,
    kind: FuzzKind,
) -> Result<FuzzOutcome, Failure> {
    let set = [(name.to_string(), f)];
    Ok(match kind {
        FuzzKind::Cerf => cerf_fuzz(&set, cfg)?,
        FuzzKind::Oracle => oracle_fuzz(&set, cfg)?,
    })
}

fn fuzz(args: &FuzzArgs, kind: FuzzKind) -> Outcome {
    if args.max_width == 0 {
        return Err(Failure::usage("--max-width must be at least 1"));
    }
    let cfg = FuzzConfig {
        seed: args.seed,
        count: args.count,
        words: RandomWordConfig {
            max_width: args.max_width,
            max_layers: args.max_layers,
        },
        eval: EvalConfig {
            size_cap: args.size.size_cap,
        },
    };
    let mut outcomes = Vec::new();
    if args.algebra.is_empty() {
        for (name, f) in shipped_algebras() {
            outcomes.push((name.clone(), run_fuzz(&name, f, &cfg, kind)?));
        }
    } else {
        for path in &args.algebra {
            let text = read(path)?;
            let name = path.display().to_string();
            let outcome =
                with_spec!(text, spec => run_fuzz(&name, spec?.frobenius()?, &cfg, kind)?);
            outcomes.push((name, outcome));
        }
    }
    let label = match kind {
        FuzzKind::Cerf => "cerf-fuzz",
        FuzzKind::Oracle => "oracle-fuzz",
    };
    for (name, o) in &outcomes {
        match &o.failure {
            None => println!(
                "PASS {label} {name}: {} words, {} comparisons",
                o.words, o.comparisons
            ),
            Some(fail) => {
                println!(
                    "FAIL {label} {name}: case {} word \"{}\": {}",
                    fail.case, fail.word, fail.detail
                );
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn default_sum_words() -> Vec<CobordismWord> {
    let mut words = vec![
        CobordismWord::identity(1).expect("width 1"),
        CobordismWord::connected(1, 1, 1),
    ];
    words.extend((0..=3).map(CobordismWord::closed_surface));
    words
}

fn sumcheck(first: &Path, second: &Path, words: &[String], size_cap: u128) -> Outcome {
    let (a, b) = (read(first)?, read(second)?);
    let field_a = format::peek_field(&a)?;
    let field_b = format::peek_field(&b)?;
    if field_a != field_b {
        return Err(Error::FieldMismatch {
            left: field_a,
            right: field_b,
        }
        .into());
    }
    let words = if words.is_empty() {
        default_sum_words()
    } else {
        words
            .iter()
            .map(|w| parse_word(w))
            .collect::<Result<_, _>>()?
    };
    let config = EvalConfig { size_cap };
    with_spec!(a, first => {
        let f1 = first?.frobenius()?;
        let f2 = format::parse_frobenius(&b)?;
        let mut passed = true;
        for w in &words {
            let report = verify_direct_sum(&f1, &f2, w, &config)?;
            println!("word \"{w}\"");
            print!("{report}");
            passed &= report.passed();
        }
        Ok(status(passed))
    })
}

fn counterexample(max_genus: u32) -> Outcome {
    let a = families::truncated_local(4);
    let b = families::qxy();
    let values = |f: &FrobeniusAlgebra<Rational>| -> Vec<String> {
        (0..=max_genus)
            .map(|g| closed_invariant(f, g).to_string())
            .collect()
    };
    let (va, vb) = (values(&a), values(&b));
    let ia = a.algebra().nilpotency_index()?;
    let ib = b.algebra().nilpotency_index()?;
    if va != vb {
        println!(
            "closed invariants differ: ({}) vs ({})",
            va.join(","),
            vb.join(",")
        );
        return Ok(ExitCode::from(1));
    }
    if ia == ib {
        println!("nilpotency indices agree ({ia}); no certificate of inequivalence");
        return Ok(ExitCode::from(1));
    }
    println!(
        "closed invariants g≤{max_genus} equal: ({}); nilpotency index {ia} ≠ {ib} ⇒ theories inequivalent",
        va.join(",")
    );
    Ok(ExitCode::SUCCESS)
}
