//! Exact computations with commutative Frobenius algebras and the two-dimensional
//! topological field theories they define.
//!
//! Everything is generic over [`Scalar`], implemented for exact rationals and for prime
//! fields. Cobordisms are layered words over six generators; evaluating a word in a Frobenius
//! algebra gives a linear map between tensor powers of the algebra.

pub mod algebra;
pub mod cobordism;
pub mod decompose;
pub mod error;
pub mod eval;
mod factor;
pub mod families;
pub mod format;
pub mod frobenius;
pub mod fuzz;
pub mod linalg;
pub mod poly;
pub mod scalar;

pub use algebra::{Algebra, IdealChain};
pub use cobordism::{
    applicable_moves, apply_cerf_move, euler_char, normal_form, parse_word, random_word, CerfMove,
    CobordismWord, Generator, MoveFamily, MoveKind, NormalForm, RandomWordConfig,
};
pub use decompose::{classify, decompose, primitive_idempotents, Decomposition, Summand};
pub use error::{Error, Result};
pub use eval::{
    closed_invariant, elementary_operator, evaluate_normal, evaluate_word, simple_euler_check,
    verify_direct_sum, EvalConfig, Evaluator, LinearOperator, Report,
};
pub use frobenius::{Classification, FrobeniusAlgebra};
pub use linalg::{Matrix, Subspace};
pub use poly::Poly;
pub use scalar::{FieldKind, Fp, Scalar};

/// Exact rational scalars.
pub type Rational = num_rational::BigRational;
pub type QAlgebra = Algebra<Rational>;
pub type QFrobenius = FrobeniusAlgebra<Rational>;
pub type QOperator = LinearOperator<Rational>;
pub type FpAlgebra = Algebra<Fp>;
pub type FpFrobenius = FrobeniusAlgebra<Fp>;
pub type FpOperator = LinearOperator<Fp>;
