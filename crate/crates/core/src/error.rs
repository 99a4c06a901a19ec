use thiserror::Error;

use crate::scalar::FieldKind;

/// Errors raised anywhere in the library.
///
/// Vectors carried by error variants (witnesses) are rendered as scalar strings so the
/// error type stays independent of the scalar field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("an algebra must have dimension at least 1")]
    EmptyAlgebra,

    #[error("multiplication is not associative: (a{i} a{j}) a{k} != a{i} (a{j} a{k})")]
    NonAssociative { i: usize, j: usize, k: usize },

    #[error("multiplication is not commutative: a{i} a{j} != a{j} a{i}")]
    NonCommutative { i: usize, j: usize },

    #[error("unit vector fails the unit law on basis element {i}")]
    BadUnit { i: usize },

    #[error("field {field} unsupported: {reason}")]
    FieldUnsupported { field: FieldKind, reason: String },

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldKind, right: FieldKind },

    #[error("not a nilpotent-type algebra (radical dim {radical_dim}, socle dim {socle_dim})")]
    NotNilpotentType {
        radical_dim: usize,
        socle_dim: usize,
    },

    #[error("pairing is degenerate; kernel witness ({})", witness.join(", "))]
    DegeneratePairing { witness: Vec<String> },

    #[error("change-of-basis matrix is singular")]
    SingularMatrix,

    #[error("lambda must be nonzero")]
    ZeroLambda,

    #[error("socle has dimension {dim}, expected 1")]
    SocleNotOneDim { dim: usize },

    #[error("functional vanishes on the socle")]
    MuVanishesOnSocle,

    #[error("algebra is semisimple (no nonzero nilpotents)")]
    SemisimpleInput,

    #[error("algebra is not local (not spanned by the identity and nilpotents)")]
    NotLocal,

    #[error("algebra is not indecomposable ({idempotents} primitive idempotents)")]
    NotIndecomposable { idempotents: usize },

    #[error("cannot parse scalar {text:?} in field {field}")]
    ScalarParse { text: String, field: FieldKind },

    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("width mismatch at layer {layer}: expected {expected} strands, got {got}")]
    WidthMismatch {
        layer: usize,
        expected: usize,
        got: usize,
    },

    #[error("move pattern does not match at layer {layer}, slot {slot}")]
    PatternMismatch { layer: usize, slot: usize },

    #[error("evaluation needs {entries} entries, above the cap of {cap}")]
    SizeLimitExceeded { entries: u128, cap: u128 },

    #[error("word has {components} connected components, expected 1")]
    NotConnected { components: usize },

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
