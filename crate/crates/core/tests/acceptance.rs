//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero if any fail.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tqft2d::cobordism::{random_word, RandomWordConfig};
use tqft2d::decompose::signature_of;
use tqft2d::families;
use tqft2d::format::parse_frobenius;
use tqft2d::fuzz::{cerf_fuzz, fuzz_word, oracle_fuzz, FuzzConfig};
use tqft2d::{
    closed_invariant, decompose, evaluate_word, simple_euler_check, verify_direct_sum,
    CobordismWord, EvalConfig, FieldKind, Matrix, QFrobenius, Rational,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn within(limit: Duration, started: Instant) -> Result<(), String> {
    let took = started.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn shipped_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../algebras")
}

fn shipped(name: &str) -> QFrobenius {
    let path = shipped_dir().join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_frobenius(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

const SHIPPED: [&str; 5] = ["s2.alg", "n2.alg", "qx4.alg", "qxy.alg", "sum13.alg"];

fn nilpotent_algebras() -> Vec<(String, QFrobenius)> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut out = vec![
        ("N2".to_string(), families::n2()),
        ("Q[x]/(x^3)".to_string(), families::truncated_local(3)),
        ("Q[x]/(x^4)".to_string(), families::truncated_local(4)),
        ("Q[x,y]/(x^2,y^2)".to_string(), families::qxy()),
        ("n2.alg".to_string(), shipped("n2.alg")),
        ("qx4.alg".to_string(), shipped("qx4.alg")),
        ("qxy.alg".to_string(), shipped("qxy.alg")),
    ];
    let scrambled: Vec<_> = out
        .iter()
        .take(4)
        .map(|(name, f)| {
            (
                format!("{name} rebased"),
                families::scrambled_sum(std::slice::from_ref(f), &mut rng),
            )
        })
        .collect();
    out.extend(scrambled);
    out
}

fn random_algebras(count: usize, seed: u64) -> Vec<QFrobenius> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| families::random_frobenius(5, &mut rng))
        .collect()
}

fn frobenius_axioms() -> Outcome {
    let started = Instant::now();
    let mut algebras: Vec<(String, QFrobenius)> = SHIPPED
        .iter()
        .map(|n| (n.to_string(), shipped(n)))
        .collect();
    for (i, f) in random_algebras(100, 1).into_iter().enumerate() {
        algebras.push((format!("random #{i}"), f));
    }
    for (name, f) in &algebras {
        f.algebra()
            .check_laws()
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(f.gram().inverse().is_some(), || {
            format!("{name}: singular Gram matrix")
        })?;
        ensure(f.check_duality(), || format!("{name}: dual basis"))?;
        ensure(f.check_snake(), || format!("{name}: snake identity"))?;
    }
    within(Duration::from_secs(5), started)?;
    Ok(format!(
        "{} algebras in {:.2?}",
        algebras.len(),
        started.elapsed()
    ))
}

fn closed_invariants() -> Outcome {
    let mut algebras: Vec<(String, QFrobenius)> = SHIPPED
        .iter()
        .map(|n| (n.to_string(), shipped(n)))
        .collect();
    algebras.extend(nilpotent_algebras());
    for (i, f) in families::indecomposable_pool().into_iter().enumerate() {
        algebras.push((format!("pool #{i}"), f));
    }
    for (i, f) in random_algebras(20, 2).into_iter().enumerate() {
        algebras.push((format!("random #{i}"), f));
    }
    for (name, f) in &algebras {
        let sphere = closed_invariant(f, 0);
        let expected = f.counit(f.algebra().unit());
        ensure(sphere == expected, || {
            format!("{name}: g=0 gives {sphere}, mu(1) = {expected}")
        })?;
        let torus = closed_invariant(f, 1);
        ensure(torus == q(f.dim() as i64), || {
            format!("{name}: g=1 gives {torus}, dim {}", f.dim())
        })?;
    }
    let nilpotent = nilpotent_algebras();
    for (name, f) in &nilpotent {
        for g in 2..=6 {
            let v = closed_invariant(f, g);
            ensure(v == q(0), || format!("{name}: g={g} gives {v}"))?;
        }
    }
    Ok(format!(
        "{} algebras, {} nilpotent",
        algebras.len(),
        nilpotent.len()
    ))
}

fn handle_identity() -> Outcome {
    let algebras = nilpotent_algebras();
    let mut terms = 0;
    for (name, f) in &algebras {
        let s = f.socle_generator().map_err(|e| format!("{name}: {e}"))?;
        let dim = q(f.dim() as i64);
        let expected: Vec<_> = s.iter().map(|x| x * &dim).collect();
        ensure(f.handle() == expected.as_slice(), || {
            format!("{name}: H is not dim * s")
        })?;

        let chain = f
            .algebra()
            .ideal_chain()
            .map_err(|e| format!("{name}: {e}"))?;
        let change = Matrix::from_columns(f.dim(), &chain.adapted_basis);
        let adapted = f
            .change_basis(&change)
            .map_err(|e| format!("{name}: {e}"))?;
        let s_adapted = adapted
            .socle_generator()
            .map_err(|e| format!("{name}: {e}"))?;
        for (i, b) in adapted.dual_basis().iter().enumerate() {
            let a = adapted.algebra().basis_vector(i);
            let product = adapted
                .algebra()
                .multiply(&a, b)
                .map_err(|e| e.to_string())?;
            ensure(product == s_adapted, || {
                format!("{name}: a_{i} b_{i} is not s")
            })?;
            terms += 1;
        }
    }
    Ok(format!(
        "{} nilpotent algebras, {terms} basis terms",
        algebras.len()
    ))
}

fn euler_formula() -> Outcome {
    let config = EvalConfig::default();
    let lambdas = [q(2), q(3), frac(1, 2), q(-1)];
    for lambda in &lambdas {
        let simple = families::simple_q(lambda.clone());
        for g in 0..=4usize {
            let w = CobordismWord::closed_surface(g);
            let value = evaluate_word(&w, &simple, &config).map_err(|e| e.to_string())?;
            // λ^(-χ/2) with χ = 2 - 2g
            let expected = num_traits::pow::Pow::pow(lambda, g as i32 - 1);
            ensure(value.scalar() == Some(&expected), || {
                format!(
                    "lambda {lambda}, genus {g}: got {:?}, expected {expected}",
                    value.scalar()
                )
            })?;
            let report = simple_euler_check(FieldKind::Rational, lambda, &w, &config)
                .map_err(|e| e.to_string())?;
            ensure(report.passed(), || {
                format!("lambda {lambda}, genus {g}: {:?}", report.first_failure())
            })?;
        }
    }
    let words = RandomWordConfig::default();
    let mut open = 0;
    let mut seed = 0u64;
    while open < 50 {
        let w = random_word(seed, &words);
        seed += 1;
        if w.in_width() + w.out_width() == 0 {
            continue;
        }
        open += 1;
        for lambda in &lambdas {
            let report = simple_euler_check(FieldKind::Rational, lambda, &w, &config)
                .map_err(|e| e.to_string())?;
            ensure(report.passed(), || {
                format!(
                    "lambda {lambda}, word \"{w}\": {:?}",
                    report.first_failure()
                )
            })?;
        }
    }
    Ok(format!(
        "{} lambdas, genus 0..=4 and {open} open words",
        lambdas.len()
    ))
}

fn decomposition_round_trip() -> Outcome {
    let started = Instant::now();
    let pool = families::indecomposable_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..100 {
        let count = rng.gen_range(1..=4);
        let parts: Vec<QFrobenius> = (0..count)
            .map(|_| pool[rng.gen_range(0..pool.len())].clone())
            .collect();
        let sum = families::scrambled_sum(&parts, &mut rng);
        let expected = signature_of(&parts).map_err(|e| e.to_string())?;
        let got = decompose(&sum)
            .map_err(|e| format!("case {case}: {e}"))?
            .signature();
        ensure(got == expected, || {
            format!("case {case}: {got:?} vs {expected:?}")
        })?;
    }
    within(Duration::from_secs(30), started)?;
    Ok(format!("100 sums in {:.2?}", started.elapsed()))
}

fn small_algebras() -> Vec<(String, QFrobenius)> {
    vec![
        ("S_2".into(), families::simple_q(q(2))),
        ("S_-1".into(), families::simple_q(q(-1))),
        ("N2".into(), families::n2()),
        ("S_1+S_3".into(), families::sum13()),
        ("Q[x]/(x^3)".into(), families::truncated_local(3)),
    ]
}

fn fuzz_config() -> FuzzConfig {
    FuzzConfig {
        seed: 1000,
        count: 1000,
        words: RandomWordConfig {
            max_width: 4,
            ..RandomWordConfig::default()
        },
        eval: EvalConfig::default(),
    }
}

fn cerf_invariance() -> Outcome {
    let started = Instant::now();
    let cfg = fuzz_config();
    let algebras = small_algebras();
    let outcome = cerf_fuzz(&algebras, &cfg).map_err(|e| e.to_string())?;
    if let Some(f) = &outcome.failure {
        return Err(format!(
            "case {} in {}: word \"{}\": {}",
            f.case, f.algebra, f.word, f.detail
        ));
    }
    ensure(outcome.words == 1000, || {
        format!("only {} words", outcome.words)
    })?;
    within(Duration::from_secs(60), started)?;
    Ok(format!(
        "{} words, {} move comparisons over {} algebras in {:.2?}",
        outcome.words,
        outcome.comparisons,
        algebras.len(),
        started.elapsed()
    ))
}

fn oracle_equivalence() -> Outcome {
    let cfg = fuzz_config();
    // Same words as the move check.
    debug_assert_eq!(fuzz_word(&cfg, 0), fuzz_word(&fuzz_config(), 0));
    let outcome = oracle_fuzz(&small_algebras(), &cfg).map_err(|e| e.to_string())?;
    if let Some(f) = &outcome.failure {
        return Err(format!(
            "case {} in {}: word \"{}\": {}",
            f.case, f.algebra, f.word, f.detail
        ));
    }
    Ok(format!(
        "{} words, {} comparisons",
        outcome.words, outcome.comparisons
    ))
}

fn direct_sums() -> Outcome {
    let config = EvalConfig::default();
    let pairs = [
        (
            "S_1",
            families::simple_q(q(1)),
            "S_3",
            families::simple_q(q(3)),
        ),
        ("S_1", families::simple_q(q(1)), "N2", families::n2()),
        ("N2", families::n2(), "N2", families::n2()),
    ];
    let mut words = vec![
        CobordismWord::identity(1).unwrap(),
        CobordismWord::connected(1, 1, 1),
    ];
    words.extend((0..=3).map(CobordismWord::closed_surface));
    let mut checks = 0;
    for (n1, f1, n2, f2) in &pairs {
        for w in &words {
            let report = verify_direct_sum(f1, f2, w, &config).map_err(|e| e.to_string())?;
            ensure(report.passed(), || {
                format!("{n1} + {n2}, word \"{w}\": {:?}", report.first_failure())
            })?;
            ensure(
                report
                    .checks
                    .iter()
                    .any(|c| c.name.contains("position independence")),
                || "no puncture position check ran".into(),
            )?;
            checks += report.checks.len();
        }
    }
    Ok(format!(
        "{} pairs x {} words, {checks} checks",
        pairs.len(),
        words.len()
    ))
}

fn counterexample() -> Outcome {
    let a = shipped("qx4.alg");
    let b = shipped("qxy.alg");
    let values = |f: &QFrobenius| {
        (0..=6)
            .map(|g| closed_invariant(f, g).to_string())
            .collect::<Vec<_>>()
    };
    let expected: Vec<String> = ["0", "4", "0", "0", "0", "0", "0"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    ensure(values(&a) == expected, || format!("x^4: {:?}", values(&a)))?;
    ensure(values(&b) == expected, || format!("xy: {:?}", values(&b)))?;
    let ia = a.algebra().nilpotency_index().map_err(|e| e.to_string())?;
    let ib = b.algebra().nilpotency_index().map_err(|e| e.to_string())?;
    ensure((ia, ib) == (4, 3), || {
        format!("nilpotency indices {ia}, {ib}")
    })?;
    Ok(format!(
        "invariants ({}), indices {ia} vs {ib}",
        expected.join(",")
    ))
}

fn positivity() -> Outcome {
    for lambda in [q(1), q(2), frac(1, 2)] {
        let f = families::simple_q(lambda.clone());
        ensure(f.check_positive_definite() == Ok(true), || {
            format!("S_{lambda} not positive")
        })?;
    }
    let f = families::simple_q(q(-1));
    ensure(f.check_positive_definite() == Ok(false), || {
        "S_-1 positive".into()
    })?;
    let nilpotent = nilpotent_algebras();
    for (name, f) in &nilpotent {
        ensure(f.check_positive_definite() == Ok(false), || {
            format!("{name} positive")
        })?;
    }
    Ok(format!(
        "3 positive simples, S_-1 and {} nilpotent algebras rejected",
        nilpotent.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Frobenius axiom suite", frobenius_axioms),
        ("closed invariants", closed_invariants),
        ("handle identity", handle_identity),
        ("Euler formula", euler_formula),
        ("decomposition round trip", decomposition_round_trip),
        ("Cerf invariance", cerf_invariance),
        ("oracle equivalence", oracle_equivalence),
        ("direct-sum theorem", direct_sums),
        ("counterexample", counterexample),
        ("positivity", positivity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
