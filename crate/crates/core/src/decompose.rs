//! Splitting a Frobenius algebra into indecomposable summands.
//!
//! Each summand is `p·A` for a primitive idempotent `p`; the restriction of `μ` to it is again
//! nondegenerate because distinct summands are orthogonal for the pairing.
//!
//! Idempotents are found by repeatedly taking an element `x` of a piece `eA`, factoring its
//! minimal polynomial `m = Π q_i^{k_i}` into coprime prime powers, and evaluating the CRT
//! idempotents of `F[t]/(m)` at `x`. A piece is primitive once its semisimple quotient is a
//! field, which is detected when some element's reduced minimal polynomial is irreducible of
//! full degree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::frobenius::{Classification, FrobeniusAlgebra};
use crate::linalg::Subspace;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// One indecomposable summand `p·A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand<T> {
    pub idempotent: Vec<T>,
    /// Basis of `p·A` in the coordinates of the ambient algebra.
    pub basis: Vec<Vec<T>>,
    pub component: FrobeniusAlgebra<T>,
    pub classification: Classification<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<T> {
    pub summands: Vec<Summand<T>>,
}

/// Complete set of orthogonal primitive idempotents summing to 1, sorted descending
/// lexicographically by coordinates.
pub fn primitive_idempotents<T: Scalar>(f: &FrobeniusAlgebra<T>) -> Result<Vec<Vec<T>>> {
    algebra_idempotents(f.algebra())
}

pub fn algebra_idempotents<T: Scalar>(a: &Algebra<T>) -> Result<Vec<Vec<T>>> {
    a.field().require_large_characteristic(a.dim())?;
    let mut pending = vec![a.unit().to_vec()];
    let mut primitive = Vec::new();
    while let Some(e) = pending.pop() {
        let range = ideal_of(a, &e);
        let piece = a.restrict(&range, &e);
        match split_once(&piece)? {
            None => primitive.push(e),
            Some(parts) => {
                for coords in parts {
                    pending.push(from_coordinates(a, &range, &coords));
                }
            }
        }
    }
    primitive.sort_by(|x, y| y.cmp(x));
    Ok(primitive)
}

fn ideal_of<T: Scalar>(a: &Algebra<T>, e: &[T]) -> Subspace<T> {
    let columns: Vec<Vec<T>> = (0..a.dim())
        .map(|j| a.product(e, &a.basis_vector(j)))
        .collect();
    Subspace::span(a.dim(), &columns)
}

fn from_coordinates<T: Scalar>(a: &Algebra<T>, range: &Subspace<T>, coords: &[T]) -> Vec<T> {
    let mut v = a.zero_vector();
    for (c, b) in coords.iter().zip(range.basis()) {
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(b) {
            *x = x.clone() + c.clone() * y.clone();
        }
    }
    v
}

/// Candidate elements: the basis, then seeded random combinations.
fn candidates<T: Scalar>(b: &Algebra<T>) -> impl Iterator<Item = Vec<T>> + '_ {
    let n = b.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de4_907e);
    let random = (0..256).map(move |_| {
        (0..n)
            .map(|_| b.scalar(rng.gen_range(-50..=50)))
            .collect::<Vec<T>>()
    });
    (0..n).map(move |i| b.basis_vector(i)).chain(random)
}

/// Nontrivial orthogonal idempotents of `b` summing to 1, or `None` if `b` is local.
fn split_once<T: Scalar>(b: &Algebra<T>) -> Result<Option<Vec<Vec<T>>>> {
    let residue_dim = b.dim() - b.nilradical()?.dim();
    if residue_dim == 1 {
        return Ok(None);
    }
    for x in candidates(b) {
        let m = b.min_poly(&x);
        let reduced = m.squarefree_part();
        let factors = T::factor_squarefree(&reduced, b.field());
        if factors.len() >= 2 {
            let idempotents = crt_idempotents(&m, &factors)
                .iter()
                .map(|e| b.eval_poly(e, &x))
                .collect();
            return Ok(Some(idempotents));
        }
        if reduced.degree() == Some(residue_dim) {
            return Ok(None);
        }
    }
    Err(Error::FieldUnsupported {
        field: b.field(),
        reason: "no splitting element found for the semisimple quotient".into(),
    })
}

/// Polynomials `e_i` with `e_i ≡ 1 mod q_i^{k_i}` and `e_i ≡ 0 mod m / q_i^{k_i}`.
fn crt_idempotents<T: Scalar>(m: &Poly<T>, factors: &[Poly<T>]) -> Vec<Poly<T>> {
    factors
        .iter()
        .map(|q| {
            let mut prime_power = q.clone();
            let mut cofactor = m.div_rem(q).0;
            loop {
                let (next, r) = cofactor.div_rem(q);
                if !r.is_zero() {
                    break;
                }
                prime_power = prime_power.mul(q);
                cofactor = next;
            }
            let (g, s, _) = cofactor.ext_gcd(&prime_power);
            debug_assert_eq!(g, Poly::one());
            s.mul(&cofactor).rem(m)
        })
        .collect()
}

/// Classifies a Frobenius algebra with exactly one primitive idempotent.
pub fn classify<T: Scalar>(f: &FrobeniusAlgebra<T>) -> Result<Classification<T>> {
    let idempotents = primitive_idempotents(f)?;
    if idempotents.len() != 1 {
        return Err(Error::NotIndecomposable {
            idempotents: idempotents.len(),
        });
    }
    classify_indecomposable(f)
}

fn classify_indecomposable<T: Scalar>(f: &FrobeniusAlgebra<T>) -> Result<Classification<T>> {
    let a = f.algebra();
    if a.dim() == 1 {
        let lambda = f
            .counit(a.unit())
            .inverse()
            .expect("nondegenerate one-dimensional pairing");
        return Ok(Classification::Simple { lambda });
    }
    if a.nilradical()?.is_zero() {
        return Ok(Classification::SimpleFieldExtension { degree: a.dim() });
    }
    Ok(Classification::Nilpotent {
        dim: a.dim(),
        socle_generator: f.socle_generator()?,
        nilpotency_index: a.nilpotency_index()?,
    })
}

/// Splits `f` into indecomposable Frobenius summands, ordered by
/// (dimension, classification, idempotent descending).
pub fn decompose<T: Scalar>(f: &FrobeniusAlgebra<T>) -> Result<Decomposition<T>> {
    let a = f.algebra();
    let mut summands = Vec::new();
    for p in primitive_idempotents(f)? {
        let range = ideal_of(a, &p);
        let algebra = a.restrict(&range, &p);
        let mu = range.basis().iter().map(|b| f.counit(b)).collect();
        let component = FrobeniusAlgebra::new(algebra, mu)?;
        let classification = classify_indecomposable(&component)?;
        summands.push(Summand {
            idempotent: p,
            basis: range.basis().to_vec(),
            component,
            classification,
        });
    }
    summands.sort_by(|x, y| {
        x.component
            .dim()
            .cmp(&y.component.dim())
            .then(x.classification.rank().cmp(&y.classification.rank()))
            .then(y.idempotent.cmp(&x.idempotent))
    });
    Ok(Decomposition { summands })
}

impl<T: Scalar> Decomposition<T> {
    /// Multiset key `(dim, tag, λ or nilpotency index)` per summand, sorted.
    pub fn signature(&self) -> Vec<(usize, &'static str, String)> {
        let mut out: Vec<_> = self
            .summands
            .iter()
            .map(|s| {
                (
                    s.component.dim(),
                    s.classification.tag(),
                    invariant_text(&s.classification),
                )
            })
            .collect();
        out.sort();
        out
    }
}

/// The distinguishing invariant of a classification as text.
pub fn invariant_text<T: Scalar>(c: &Classification<T>) -> String {
    match c {
        Classification::Simple { lambda } => lambda.to_string(),
        Classification::Nilpotent {
            nilpotency_index, ..
        } => nilpotency_index.to_string(),
        Classification::SimpleFieldExtension { degree } => degree.to_string(),
    }
}

/// Signature of a list of indecomposables, comparable with [`Decomposition::signature`].
pub fn signature_of<T: Scalar>(
    parts: &[FrobeniusAlgebra<T>],
) -> Result<Vec<(usize, &'static str, String)>> {
    let mut out = Vec::new();
    for part in parts {
        let c = classify(part)?;
        out.push((part.dim(), c.tag(), invariant_text(&c)));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::linalg::dot;
    use crate::scalar::FieldKind;
    use crate::scalar::Fp;
    use num_rational::BigRational;
    use num_traits::Zero;

    type Q = BigRational;

    fn q(s: &str) -> Q {
        Q::parse_in(s, FieldKind::Rational).unwrap()
    }

    fn v(xs: &[&str]) -> Vec<Q> {
        xs.iter().map(|x| q(x)).collect()
    }

    #[test]
    fn split_pair_idempotents() {
        let f = families::sum13();
        let p = primitive_idempotents(&f).unwrap();
        assert_eq!(p, vec![v(&["1/2", "1/2"]), v(&["1/2", "-1/2"])]);
    }

    #[test]
    fn local_algebras_have_one_idempotent() {
        assert_eq!(
            primitive_idempotents(&families::n2()).unwrap(),
            vec![v(&["1", "0"])]
        );
        let s = families::simple_q(q("5"));
        assert_eq!(primitive_idempotents(&s).unwrap(), vec![v(&["1"])]);
    }

    #[test]
    fn decompose_sum13() {
        let d = decompose(&families::sum13()).unwrap();
        assert_eq!(d.summands.len(), 2);
        assert_eq!(
            d.summands[0].classification,
            Classification::Simple { lambda: q("1") }
        );
        assert_eq!(
            d.summands[1].classification,
            Classification::Simple { lambda: q("3") }
        );
    }

    #[test]
    fn decompose_dual_numbers() {
        let d = decompose(&families::n2()).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(
            d.summands[0].classification,
            Classification::Nilpotent {
                dim: 2,
                socle_generator: v(&["0", "1"]),
                nilpotency_index: 2
            }
        );
    }

    #[test]
    fn decompose_three_blocks() {
        let s1 = families::simple_q(q("1"));
        let f = s1
            .direct_sum(&s1)
            .unwrap()
            .direct_sum(&families::n2())
            .unwrap();
        let d = decompose(&f).unwrap();
        assert_eq!(
            d.signature(),
            vec![
                (1, "simple", "1".to_string()),
                (1, "simple", "1".to_string()),
                (2, "nilpotent", "2".to_string())
            ]
        );
        let total: usize = d.summands.iter().map(|s| s.component.dim()).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn idempotents_are_complete_and_orthogonal() {
        let s2 = families::simple_q(q("2"));
        let f = families::qxy()
            .direct_sum(&s2)
            .unwrap()
            .direct_sum(&families::truncated_local(3))
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let change = families::random_change_of_basis(f.dim(), FieldKind::Rational, &mut rng);
        let f = f.change_basis(&change).unwrap();
        let a = f.algebra();
        let ps = primitive_idempotents(&f).unwrap();
        assert_eq!(ps.len(), 3);
        let mut sum = a.zero_vector();
        for (i, p) in ps.iter().enumerate() {
            for (j, r) in ps.iter().enumerate() {
                let prod = a.product(p, r);
                if i == j {
                    assert_eq!(&prod, p);
                } else {
                    assert!(prod.iter().all(|x| x.is_zero()));
                }
            }
            sum = sum
                .iter()
                .zip(p)
                .map(|(x, y)| x.clone() + y.clone())
                .collect();
        }
        assert_eq!(sum, a.unit());
        // Distinct summands are orthogonal for the pairing.
        let d = decompose(&f).unwrap();
        for (i, s) in d.summands.iter().enumerate() {
            for t in &d.summands[i + 1..] {
                for x in &s.basis {
                    for y in &t.basis {
                        assert!(f.pairing(x, y).is_zero());
                    }
                }
            }
            assert!(s.component.gram().inverse().is_some());
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&families::simple_q(q("3"))).unwrap(),
            Classification::Simple { lambda: q("3") }
        );
        assert_eq!(
            classify(&families::truncated_local(4)).unwrap(),
            Classification::Nilpotent {
                dim: 4,
                socle_generator: v(&["0", "0", "0", "1"]),
                nilpotency_index: 4
            }
        );
        let ext = FrobeniusAlgebra::new(
            families::quadratic_extension(FieldKind::Rational, 2),
            v(&["1", "0"]),
        )
        .unwrap();
        assert_eq!(
            classify(&ext).unwrap(),
            Classification::SimpleFieldExtension { degree: 2 }
        );
        assert_eq!(
            classify(&families::sum13()).unwrap_err(),
            Error::NotIndecomposable { idempotents: 2 }
        );
    }

    #[test]
    fn irreducible_quartic_stays_whole() {
        // Q[t]/(t^4 - 10t^2 + 1) is the field Q(√2 + √3).
        let f = FieldKind::Rational;
        let n = 4;
        let mut mult = vec![vec![vec![Q::from_i64_in(0, f); n]; n]; n];
        let reduce = |k: usize| -> Vec<Q> {
            // t^k reduced modulo t^4 = 10 t^2 - 1, for k ≤ 6
            let mut c = [0i64; 7];
            c[k] = 1;
            for d in (4..7).rev() {
                let lead = c[d];
                c[d] = 0;
                c[d - 2] += 10 * lead;
                c[d - 4] -= lead;
            }
            c[..4].iter().map(|&x| Q::from_i64_in(x, f)).collect()
        };
        for i in 0..n {
            for j in 0..n {
                mult[i][j] = reduce(i + j);
            }
        }
        let names = (0..n).map(|i| format!("t{i}")).collect();
        let a = Algebra::new(f, names, mult, reduce(0)).unwrap();
        let fa = FrobeniusAlgebra::new(a, v(&["1", "0", "0", "0"])).unwrap();
        assert_eq!(
            classify(&fa).unwrap(),
            Classification::SimpleFieldExtension { degree: 4 }
        );
    }

    #[test]
    fn prime_field_decomposition() {
        let field = FieldKind::Prime(5);
        let e = |x: i64| Fp::new(x, 5);
        // t² - 2 is irreducible mod 5, t² - 1 splits.
        let ext = FrobeniusAlgebra::new(families::quadratic_extension(field, 2), vec![e(1), e(0)])
            .unwrap();
        assert_eq!(
            classify(&ext).unwrap(),
            Classification::SimpleFieldExtension { degree: 2 }
        );
        let split =
            FrobeniusAlgebra::new(families::split_pair_algebra(field), vec![e(1), e(0)]).unwrap();
        let d = decompose(&split).unwrap();
        assert_eq!(d.summands.len(), 2);
        // idempotents (1/2)(a ± b): 1/2 = 3 mod 5, -1/2 = 2 mod 5
        let ps: Vec<Vec<Fp>> = d.summands.iter().map(|s| s.idempotent.clone()).collect();
        assert!(ps.contains(&vec![e(3), e(3)]));
        assert!(ps.contains(&vec![e(3), e(2)]));
        for s in &d.summands {
            assert!(matches!(s.classification, Classification::Simple { .. }));
            assert_eq!(
                dot(split.mu(), &s.idempotent),
                s.component.counit(s.component.algebra().unit())
            );
        }
    }

    #[test]
    fn small_characteristic_is_rejected() {
        let a = families::truncated_polynomial(FieldKind::Prime(2), 2);
        let f = FrobeniusAlgebra::new(a, vec![Fp::new(0, 2), Fp::new(1, 2)]).unwrap();
        assert!(matches!(
            primitive_idempotents(&f),
            Err(Error::FieldUnsupported { .. })
        ));
    }
}
