use std::path::PathBuf;

use tqft2d::format::{parse_frobenius, parse_operator, serialize_frobenius, serialize_operator};
use tqft2d::{decompose, evaluate_word, families, parse_word, EvalConfig, FieldKind, QFrobenius};

fn shipped(name: &str) -> QFrobenius {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../algebras")
        .join(name);
    parse_frobenius(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn shipped_files_match_the_built_in_families() {
    let pairs = [
        ("n2.alg", families::n2()),
        ("qx4.alg", families::truncated_local(4)),
        ("qxy.alg", families::qxy()),
        ("sum13.alg", families::sum13()),
        (
            "s2.alg",
            families::simple_q(tqft2d::Rational::from_integer(2.into())),
        ),
    ];
    for (name, built) in pairs {
        let f = shipped(name);
        assert_eq!(
            f.algebra().structure_constants(),
            built.algebra().structure_constants(),
            "{name}"
        );
        assert_eq!(f.mu(), built.mu(), "{name}");
    }
}

#[test]
fn shipped_files_survive_a_write_and_reread() {
    for name in ["s2.alg", "n2.alg", "qx4.alg", "qxy.alg", "sum13.alg"] {
        let f = shipped(name);
        let again: QFrobenius = parse_frobenius(&serialize_frobenius(&f)).unwrap();
        assert_eq!(
            again.algebra().structure_constants(),
            f.algebra().structure_constants(),
            "{name}"
        );
        assert_eq!(again.mu(), f.mu(), "{name}");
    }
}

#[test]
fn operators_written_by_eval_read_back() {
    let f = shipped("qxy.alg");
    let w = parse_word("comul ; id , comul ; mul , id ; mul").unwrap();
    let op = evaluate_word(&w, &f, &EvalConfig::default()).unwrap();
    let text = serialize_operator(&op);
    assert_eq!(parse_operator(&text, FieldKind::Rational).unwrap(), op);
}

#[test]
fn sum13_splits_into_s1_and_s3() {
    let d = decompose(&shipped("sum13.alg")).unwrap();
    let lambdas: Vec<_> = d.signature().into_iter().map(|(_, _, l)| l).collect();
    assert_eq!(lambdas, ["1", "3"]);
}
