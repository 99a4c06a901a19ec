//! Text formats: algebra files (TOML), decomposition reports (TOML) and dense operators.
//!
//! An algebra file looks like
//!
//! ```toml
//! field = "Q"
//! dim = 2
//! basis = ["e", "n"]
//! unit = ["1", "0"]
//! mult = [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]]
//! mu = ["0", "1"]
//! ```
//!
//! Scalars may be written as integers or as `"p/q"` strings; they are always written back as
//! strings.

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::eval::LinearOperator;
use crate::frobenius::{Classification, FrobeniusAlgebra};
use crate::linalg::Matrix;
use crate::scalar::{FieldKind, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    fn parse<T: Scalar>(&self, field: FieldKind) -> Result<T> {
        match self {
            ScalarText::Int(n) => Ok(T::from_i64_in(*n, field)),
            ScalarText::Text(s) => T::parse_in(s, field),
        }
    }

    fn of<T: Scalar>(x: &T) -> Self {
        ScalarText::Text(x.to_string())
    }
}

type Vector = Vec<ScalarText>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    field: String,
    dim: usize,
    basis: Vec<String>,
    unit: Vector,
    mult: Vec<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gram: Option<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dual_basis: Option<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    handle: Option<Vector>,
}

/// An algebra file with its optional functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec<T> {
    pub algebra: Algebra<T>,
    pub mu: Option<Vec<T>>,
}

fn toml_error(e: impl std::fmt::Display) -> Error {
    Error::Format(e.to_string().trim_end().to_string())
}

fn require_support<T: Scalar>(field: FieldKind) -> Result<()> {
    if T::supports(field) {
        Ok(())
    } else {
        Err(Error::FieldUnsupported {
            field,
            reason: "scalar type does not represent this field".into(),
        })
    }
}

fn vector<T: Scalar>(v: &[ScalarText], field: FieldKind) -> Result<Vec<T>> {
    v.iter().map(|x| x.parse(field)).collect()
}

fn text_vector<T: Scalar>(v: &[T]) -> Vector {
    v.iter().map(ScalarText::of).collect()
}

/// Reads only the `field` entry, to choose the scalar type before a full parse.
pub fn peek_field(text: &str) -> Result<FieldKind> {
    #[derive(Deserialize)]
    struct FieldOnly {
        field: String,
    }
    let f: FieldOnly = toml::from_str(text).map_err(toml_error)?;
    FieldKind::parse(&f.field)
}

pub fn parse_algebra<T: Scalar>(text: &str) -> Result<AlgebraSpec<T>> {
    let file: AlgebraFile = toml::from_str(text).map_err(toml_error)?;
    let field = FieldKind::parse(&file.field)?;
    require_support::<T>(field)?;
    if file.dim != file.basis.len() {
        return Err(Error::DimensionMismatch {
            expected: file.dim,
            got: file.basis.len(),
        });
    }
    let mult = file
        .mult
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| vector(v, field))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = vector(&file.unit, field)?;
    let algebra = Algebra::new(field, file.basis.clone(), mult, unit)?;
    let mu = file.mu.as_deref().map(|m| vector(m, field)).transpose()?;
    let spec = AlgebraSpec { algebra, mu };
    if file.gram.is_some() || file.dual_basis.is_some() || file.handle.is_some() {
        let f = spec.frobenius()?;
        let derived = frobenius_file(&f);
        let consistent = file
            .gram
            .as_ref()
            .is_none_or(|g| g == derived.gram.as_ref().unwrap())
            && file
                .dual_basis
                .as_ref()
                .is_none_or(|b| b == derived.dual_basis.as_ref().unwrap())
            && file
                .handle
                .as_ref()
                .is_none_or(|h| h == derived.handle.as_ref().unwrap());
        if !consistent {
            return Err(Error::Format(
                "derived fields disagree with the algebra".into(),
            ));
        }
    }
    Ok(spec)
}

impl<T: Scalar> AlgebraSpec<T> {
    pub fn frobenius(&self) -> Result<FrobeniusAlgebra<T>> {
        let mu = self
            .mu
            .clone()
            .ok_or_else(|| Error::Format("missing `mu`".into()))?;
        FrobeniusAlgebra::new(self.algebra.clone(), mu)
    }
}

pub fn parse_frobenius<T: Scalar>(text: &str) -> Result<FrobeniusAlgebra<T>> {
    parse_algebra(text)?.frobenius()
}

fn algebra_file<T: Scalar>(a: &Algebra<T>) -> AlgebraFile {
    AlgebraFile {
        field: a.field().to_string(),
        dim: a.dim(),
        basis: a.basis_names().to_vec(),
        unit: text_vector(a.unit()),
        mult: a
            .structure_constants()
            .iter()
            .map(|row| row.iter().map(|v| text_vector(v)).collect())
            .collect(),
        mu: None,
        gram: None,
        dual_basis: None,
        handle: None,
    }
}

fn frobenius_file<T: Scalar>(f: &FrobeniusAlgebra<T>) -> AlgebraFile {
    let mut file = algebra_file(f.algebra());
    file.mu = Some(text_vector(f.mu()));
    file.gram = Some(f.gram().to_rows().iter().map(|r| text_vector(r)).collect());
    file.dual_basis = Some(f.dual_basis().iter().map(|b| text_vector(b)).collect());
    file.handle = Some(text_vector(f.handle()));
    file
}

pub fn serialize_algebra<T: Scalar>(a: &Algebra<T>) -> String {
    toml::to_string(&algebra_file(a)).expect("algebra file serializes")
}

/// The algebra file plus `mu` and the derived `gram`, `dual_basis` and `handle`.
pub fn serialize_frobenius<T: Scalar>(f: &FrobeniusAlgebra<T>) -> String {
    toml::to_string(&frobenius_file(f)).expect("algebra file serializes")
}

pub fn serialize_spec<T: Scalar>(spec: &AlgebraSpec<T>) -> String {
    let mut file = algebra_file(&spec.algebra);
    file.mu = spec.mu.as_deref().map(text_vector);
    toml::to_string(&file).expect("algebra file serializes")
}

#[derive(Serialize)]
struct SummandEntry {
    idempotent: Vector,
    dim: usize,
    classification: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    socle: Option<Vector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nilpotency_index: Option<usize>,
}

#[derive(Serialize)]
struct DecompositionFile {
    summand: Vec<SummandEntry>,
}

fn summand_entry<T: Scalar>(idempotent: &[T], dim: usize, c: &Classification<T>) -> SummandEntry {
    let mut entry = SummandEntry {
        idempotent: text_vector(idempotent),
        dim,
        classification: c.tag(),
        lambda: None,
        socle: None,
        nilpotency_index: None,
    };
    match c {
        Classification::Simple { lambda } => entry.lambda = Some(lambda.to_string()),
        Classification::Nilpotent {
            socle_generator,
            nilpotency_index,
            ..
        } => {
            entry.socle = Some(text_vector(socle_generator));
            entry.nilpotency_index = Some(*nilpotency_index);
        }
        Classification::SimpleFieldExtension { .. } => {}
    }
    entry
}

/// One `[[summand]]` table per summand, in decomposition order. Socle generators are given in
/// the summand's own basis.
pub fn serialize_decomposition<T: Scalar>(d: &Decomposition<T>) -> String {
    let file = DecompositionFile {
        summand: d
            .summands
            .iter()
            .map(|s| summand_entry(&s.idempotent, s.component.dim(), &s.classification))
            .collect(),
    };
    toml::to_string(&file).expect("report serializes")
}

/// A single classification in the same layout as a decomposition entry.
pub fn serialize_classification<T: Scalar>(
    f: &FrobeniusAlgebra<T>,
    c: &Classification<T>,
) -> String {
    let file = DecompositionFile {
        summand: vec![summand_entry(f.algebra().unit(), f.dim(), c)],
    };
    toml::to_string(&file).expect("report serializes")
}

/// Header line then one bracketed row per matrix row.
pub fn serialize_operator<T: Scalar>(op: &LinearOperator<T>) -> String {
    let mut out = format!(
        "operator in_width={} out_width={} dim={}\n",
        op.in_width(),
        op.out_width(),
        op.dim()
    );
    out.push_str(&op.matrix().to_string());
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out
}

pub fn parse_operator<T: Scalar>(text: &str, field: FieldKind) -> Result<LinearOperator<T>> {
    require_support::<T>(field)?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty operator text".into()))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("operator") {
        return Err(Error::Format(
            "operator header must start with `operator`".into(),
        ));
    }
    let mut get = |key: &str| -> Result<usize> {
        let item = words
            .next()
            .ok_or_else(|| Error::Format(format!("missing `{key}` in header")))?;
        item.strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Format(format!("bad header entry {item:?}")))
    };
    let in_width = get("in_width")?;
    let out_width = get("out_width")?;
    let dim = get("dim")?;
    let rows = lines
        .map(|line| {
            let inner = line
                .trim()
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(|| Error::Format(format!("bad matrix row {line:?}")))?;
            inner
                .split_whitespace()
                .map(|s| T::parse_in(s, field))
                .collect()
        })
        .collect::<Result<Vec<Vec<T>>>>()?;
    let width = dim.pow(in_width as u32);
    if let Some(bad) = rows.iter().find(|r| r.len() != width) {
        return Err(Error::DimensionMismatch {
            expected: width,
            got: bad.len(),
        });
    }
    LinearOperator::new(
        Matrix::from_rows_with_width(width, rows),
        dim,
        in_width,
        out_width,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose;
    use crate::families;
    use crate::scalar::Fp;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = BigRational;

    const N2: &str = r#"
field = "Q"
dim = 2
basis = ["e", "n"]
unit = [1, 0]
mult = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
mu = ["0", "1"]
"#;

    #[test]
    fn parses_integer_and_fraction_scalars() {
        let f: FrobeniusAlgebra<Q> = parse_frobenius(N2).unwrap();
        let reference = families::n2();
        assert_eq!(
            f.algebra().structure_constants(),
            reference.algebra().structure_constants()
        );
        assert_eq!(f.mu(), reference.mu());
        assert_eq!(f.algebra().basis_names(), ["e", "n"]);
        let text = serialize_spec(&parse_algebra::<Q>(N2).unwrap());
        assert!(text.contains("unit = [\"1\", \"0\"]"), "{text}");
    }

    #[test]
    fn round_trip_is_exact() {
        let spec = parse_algebra::<Q>(N2).unwrap();
        let once = serialize_spec(&spec);
        let again = parse_algebra::<Q>(&once).unwrap();
        assert_eq!(again, spec);
        assert_eq!(serialize_spec(&again), once);
    }

    #[test]
    fn frobenius_serialization_adds_derived_fields() {
        let f = families::sum13();
        let text = serialize_frobenius(&f);
        for key in ["mu", "gram", "dual_basis", "handle"] {
            assert!(text.contains(&format!("{key} = ")), "{text}");
        }
        assert_eq!(parse_frobenius::<Q>(&text).unwrap(), f);
        let tampered = text.replace("handle = [\"", "handle = [\"7");
        assert!(matches!(
            parse_frobenius::<Q>(&tampered),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_algebra::<Q>("field = 1"),
            Err(Error::Format(_))
        ));
        let bad_dim = N2.replace("dim = 2", "dim = 3");
        assert!(matches!(
            parse_algebra::<Q>(&bad_dim),
            Err(Error::DimensionMismatch { .. })
        ));
        let bad_scalar = N2.replace("mu = [\"0\", \"1\"]", "mu = [\"0\", \"x/2\"]");
        assert!(matches!(
            parse_algebra::<Q>(&bad_scalar),
            Err(Error::ScalarParse { .. })
        ));
        let unknown = format!("{N2}\nextra = 1\n");
        assert!(matches!(
            parse_algebra::<Q>(&unknown),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            parse_algebra::<Fp>(N2),
            Err(Error::FieldUnsupported { .. })
        ));
    }

    #[test]
    fn prime_field_files() {
        let text = N2
            .replace("\"Q\"", "\"Fp:7\"")
            .replace("mu = [\"0\", \"1\"]", "mu = [0, -1]");
        assert_eq!(peek_field(&text).unwrap(), FieldKind::Prime(7));
        let f: FrobeniusAlgebra<Fp> = parse_frobenius(&text).unwrap();
        assert_eq!(f.mu()[1], Fp::new(6, 7));
        let again: FrobeniusAlgebra<Fp> = parse_frobenius(&serialize_frobenius(&f)).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn decomposition_report() {
        let text = serialize_decomposition(&decompose(&families::sum13()).unwrap());
        let expected = "[[summand]]\nidempotent = [\"1/2\", \"1/2\"]\ndim = 1\nclassification = \"simple\"\nlambda = \"1\"\n\n\
                        [[summand]]\nidempotent = [\"1/2\", \"-1/2\"]\ndim = 1\nclassification = \"simple\"\nlambda = \"3\"\n";
        assert_eq!(text, expected);
        let nil = serialize_decomposition(&decompose(&families::n2()).unwrap());
        assert!(
            nil.contains("socle = [\"0\", \"1\"]\nnilpotency_index = 2"),
            "{nil}"
        );
    }

    #[test]
    fn operator_text_round_trip() {
        let f = families::n2();
        let op = crate::eval::elementary_operator(crate::cobordism::Generator::Comul, &f);
        let text = serialize_operator(&op);
        assert_eq!(
            text,
            "operator in_width=1 out_width=2 dim=2\n[0 0]\n[1 0]\n[1 0]\n[0 1]\n"
        );
        assert_eq!(parse_operator::<Q>(&text, FieldKind::Rational).unwrap(), op);
        assert!(parse_operator::<Q>(
            "operator in_width=1 out_width=1 dim=2\n[1]\n[0]",
            FieldKind::Rational
        )
        .is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn random_algebras_round_trip(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = families::random_frobenius(4, &mut rng);
            let text = serialize_frobenius(&f);
            let back: FrobeniusAlgebra<Q> = parse_frobenius(&text).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(serialize_frobenius(&back), text);
        }
    }
}
