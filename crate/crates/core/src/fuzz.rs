//! Seeded fuzzing of move invariance and of word evaluation against the normal-form oracle.

use crate::cobordism::{
    applicable_moves, apply_cerf_move, random_word, CobordismWord, RandomWordConfig,
};
use crate::error::Result;
use crate::eval::{EvalConfig, Evaluator};
use crate::frobenius::FrobeniusAlgebra;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub count: usize,
    pub words: RandomWordConfig,
    pub eval: EvalConfig,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            count: 200,
            words: RandomWordConfig::default(),
            eval: EvalConfig::default(),
        }
    }
}

/// The first counterexample found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzFailure {
    pub case: usize,
    pub algebra: String,
    pub word: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FuzzOutcome {
    pub words: usize,
    pub comparisons: usize,
    pub failure: Option<FuzzFailure>,
}

impl FuzzOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Word number `case` of a run: seeds are consecutive from `cfg.seed`.
pub fn fuzz_word(cfg: &FuzzConfig, case: usize) -> CobordismWord {
    random_word(cfg.seed.wrapping_add(case as u64), &cfg.words)
}

/// For every word and every move found by pattern scan, compares normal forms and
/// evaluations in each algebra before and after the move.
pub fn cerf_fuzz<T: Scalar>(
    algebras: &[(String, FrobeniusAlgebra<T>)],
    cfg: &FuzzConfig,
) -> Result<FuzzOutcome> {
    let evaluators: Vec<_> = algebras
        .iter()
        .map(|(name, f)| (name, Evaluator::new(f, cfg.eval)))
        .collect();
    let mut outcome = FuzzOutcome::default();
    for case in 0..cfg.count {
        let w = fuzz_word(cfg, case);
        outcome.words += 1;
        let moves = applicable_moves(&w);
        let rewritten: Vec<_> = moves
            .iter()
            .map(|&m| apply_cerf_move(&w, m).map(|r| (m, r)))
            .collect::<Result<_>>()?;
        let nf = w.normal_form();
        for (m, r) in &rewritten {
            if r.normal_form() != nf {
                outcome.failure = Some(FuzzFailure {
                    case,
                    algebra: String::new(),
                    word: w.to_string(),
                    detail: format!("{m:?} changed the normal form: {r}"),
                });
                return Ok(outcome);
            }
        }
        for (name, ev) in &evaluators {
            let before = ev.evaluate(&w)?;
            for (m, r) in &rewritten {
                outcome.comparisons += 1;
                if ev.evaluate(r)? != before {
                    outcome.failure = Some(FuzzFailure {
                        case,
                        algebra: name.to_string(),
                        word: w.to_string(),
                        detail: format!("{m:?} changed the operator: {r}"),
                    });
                    return Ok(outcome);
                }
            }
        }
    }
    Ok(outcome)
}

/// Compares direct evaluation with evaluation of the normal form.
pub fn oracle_fuzz<T: Scalar>(
    algebras: &[(String, FrobeniusAlgebra<T>)],
    cfg: &FuzzConfig,
) -> Result<FuzzOutcome> {
    let evaluators: Vec<_> = algebras
        .iter()
        .map(|(name, f)| (name, Evaluator::new(f, cfg.eval)))
        .collect();
    let mut outcome = FuzzOutcome::default();
    for case in 0..cfg.count {
        let w = fuzz_word(cfg, case);
        outcome.words += 1;
        let nf = w.normal_form();
        for (name, ev) in &evaluators {
            outcome.comparisons += 1;
            if ev.evaluate(&w)? != ev.evaluate_normal(&nf)? {
                outcome.failure = Some(FuzzFailure {
                    case,
                    algebra: name.to_string(),
                    word: w.to_string(),
                    detail: format!("normal form {nf} disagrees"),
                });
                return Ok(outcome);
            }
        }
    }
    Ok(outcome)
}
