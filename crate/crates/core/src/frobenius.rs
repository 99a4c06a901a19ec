//! Frobenius structure on a commutative algebra.
//!
//! A functional `μ` makes `(x, y) = μ(xy)` a pairing; when its Gram matrix is invertible the
//! algebra is Frobenius. The dual basis `b_i` (with `μ(a_i b_j) = δ_ij`) gives the copairing
//! `Σ a_i ⊗ b_i`, and its product `H = Σ a_i b_i` is the handle element: multiplying by `H`
//! adds a handle to a surface.

use std::cmp::Ordering;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::scalar::{FieldKind, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusAlgebra<T> {
    algebra: Algebra<T>,
    mu: Vec<T>,
    gram: Matrix<T>,
    dual_basis: Vec<Vec<T>>,
    handle: Vec<T>,
}

/// Type of an indecomposable Frobenius algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification<T> {
    /// The field itself with `μ(x) = x / λ`.
    Simple { lambda: T },
    /// A local algebra (identity plus nilpotents) with one-dimensional socle.
    Nilpotent {
        dim: usize,
        socle_generator: Vec<T>,
        nilpotency_index: usize,
    },
    /// A field extension of the base field; only possible over non-closed fields.
    SimpleFieldExtension { degree: usize },
}

impl<T> Classification<T> {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::Simple { .. } => "simple",
            Classification::Nilpotent { .. } => "nilpotent",
            Classification::SimpleFieldExtension { .. } => "field-extension",
        }
    }

    pub(crate) fn rank(&self) -> u8 {
        match self {
            Classification::Simple { .. } => 0,
            Classification::Nilpotent { .. } => 1,
            Classification::SimpleFieldExtension { .. } => 2,
        }
    }
}

impl<T: Scalar> FrobeniusAlgebra<T> {
    /// Attaches `mu`, inverting the Gram matrix exactly.
    pub fn new(algebra: Algebra<T>, mu: Vec<T>) -> Result<Self> {
        let n = algebra.dim();
        if mu.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: mu.len(),
            });
        }
        let field = algebra.field();
        let mu: Vec<T> = mu.into_iter().map(|x| x.attach(field)).collect();
        let mult = algebra.structure_constants();
        let gram = Matrix::from_fn(n, n, |i, j| dot(&mu, &mult[i][j]));
        let Some(inverse) = gram.inverse() else {
            let witness = gram
                .kernel()
                .into_iter()
                .next()
                .expect("singular Gram matrix");
            return Err(Error::DegeneratePairing {
                witness: witness.iter().map(ToString::to_string).collect(),
            });
        };
        let dual_basis: Vec<Vec<T>> = (0..n).map(|j| inverse.column(j)).collect();
        let handle = (0..n).fold(algebra.zero_vector(), |acc, i| {
            let term = algebra.product(&algebra.basis_vector(i), &dual_basis[i]);
            acc.into_iter().zip(term).map(|(a, b)| a + b).collect()
        });
        Ok(FrobeniusAlgebra {
            algebra,
            mu,
            gram,
            dual_basis,
            handle,
        })
    }

    /// The one-dimensional algebra with `μ(1) = 1/λ`.
    pub fn simple(field: FieldKind, lambda: T) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        let algebra = Algebra::new(
            field,
            vec!["1".into()],
            vec![vec![vec![T::one()]]],
            vec![T::one()],
        )?;
        FrobeniusAlgebra::new(algebra, vec![T::one() / lambda])
    }

    /// A local algebra with one-dimensional socle and a functional nonzero on the socle.
    pub fn nilpotent(algebra: Algebra<T>, mu: Vec<T>) -> Result<Self> {
        if mu.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                got: mu.len(),
            });
        }
        if algebra.nilradical()?.is_zero() {
            return Err(Error::SemisimpleInput);
        }
        let socle = algebra.socle()?;
        if socle.dim() != 1 {
            return Err(Error::SocleNotOneDim { dim: socle.dim() });
        }
        if dot(&mu, &socle.basis()[0]).is_zero() {
            return Err(Error::MuVanishesOnSocle);
        }
        FrobeniusAlgebra::new(algebra, mu)
    }

    pub fn algebra(&self) -> &Algebra<T> {
        &self.algebra
    }

    pub fn field(&self) -> FieldKind {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn mu(&self) -> &[T] {
        &self.mu
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    pub fn dual_basis(&self) -> &[Vec<T>] {
        &self.dual_basis
    }

    pub fn handle(&self) -> &[T] {
        &self.handle
    }

    pub fn counit(&self, x: &[T]) -> T {
        dot(&self.mu, x)
    }

    pub fn pairing(&self, x: &[T], y: &[T]) -> T {
        self.counit(&self.algebra.product(x, y))
    }

    /// `H^g`.
    pub fn handle_power(&self, genus: u32) -> Vec<T> {
        self.algebra.power(&self.handle, genus)
    }

    /// Block direct sum with concatenated functional.
    pub fn direct_sum(&self, other: &FrobeniusAlgebra<T>) -> Result<Self> {
        let algebra = self.algebra.direct_sum(&other.algebra)?;
        let mut mu = self.mu.clone();
        mu.extend(other.mu.iter().cloned());
        FrobeniusAlgebra::new(algebra, mu)
    }

    /// Same Frobenius algebra in the basis given by the columns of `change`.
    pub fn change_basis(&self, change: &Matrix<T>) -> Result<Self> {
        let algebra = self.algebra.change_basis(change)?;
        let mu = (0..self.dim())
            .map(|j| self.counit(&change.column(j)))
            .collect();
        FrobeniusAlgebra::new(algebra, mu)
    }

    /// The homomorphism to the base field of a local algebra: 1 on the unit, 0 on nilpotents.
    pub fn augmentation(&self) -> Result<Vec<T>> {
        let radical = self.algebra.nilradical()?;
        if radical.dim() + 1 != self.dim() {
            return Err(Error::NotLocal);
        }
        let mut rows: Vec<Vec<T>> = radical.basis().to_vec();
        rows.push(self.algebra.unit().to_vec());
        let mut rhs = vec![T::zero(); radical.dim()];
        rhs.push(T::one());
        Matrix::from_rows(rows).solve(&rhs).ok_or(Error::NotLocal)
    }

    /// The socle element `s` with `μ(s) = 1`; requires a one-dimensional socle.
    pub fn socle_generator(&self) -> Result<Vec<T>> {
        let socle = self.algebra.socle()?;
        if socle.dim() != 1 {
            return Err(Error::SocleNotOneDim { dim: socle.dim() });
        }
        let s = &socle.basis()[0];
        let scale = self.counit(s).inverse().ok_or(Error::MuVanishesOnSocle)?;
        Ok(s.iter().map(|x| x.clone() * scale.clone()).collect())
    }

    /// Whether `μ(x²) > 0` for all nonzero `x`, via leading principal minors of the Gram
    /// matrix. Only defined over ordered fields.
    pub fn check_positive_definite(&self) -> Result<bool> {
        let minors = self.gram.leading_principal_minors();
        let mut positive = true;
        for m in &minors {
            match m.sign() {
                None => {
                    return Err(Error::FieldUnsupported {
                        field: self.field(),
                        reason: "positivity needs an ordered field".into(),
                    })
                }
                Some(Ordering::Greater) => {}
                Some(_) => positive = false,
            }
        }
        Ok(positive)
    }

    /// `μ(a_i b_j) = δ_ij` for all basis pairs.
    pub fn check_duality(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let v = self.pairing(&self.algebra.basis_vector(i), &self.dual_basis[j]);
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        })
    }

    /// `Σ_i (x, a_i) b_i = x` for every basis vector `x`.
    pub fn check_snake(&self) -> bool {
        let n = self.dim();
        (0..n).all(|k| {
            let x = self.algebra.basis_vector(k);
            let mut acc = self.algebra.zero_vector();
            for i in 0..n {
                let c = self.pairing(&x, &self.algebra.basis_vector(i));
                if c.is_zero() {
                    continue;
                }
                for (a, b) in acc.iter_mut().zip(&self.dual_basis[i]) {
                    *a = a.clone() + c.clone() * b.clone();
                }
            }
            acc == x
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(s: &str) -> Q {
        Q::parse_in(s, FieldKind::Rational).unwrap()
    }

    fn v(xs: &[&str]) -> Vec<Q> {
        xs.iter().map(|x| q(x)).collect()
    }

    #[test]
    fn dual_numbers_with_socle_functional() {
        let a = families::truncated_polynomial(FieldKind::Rational, 2);
        let f = FrobeniusAlgebra::new(a, v(&["0", "1"])).unwrap();
        assert_eq!(
            f.gram(),
            &Matrix::from_rows(vec![v(&["0", "1"]), v(&["1", "0"])])
        );
        assert_eq!(f.dual_basis(), &[v(&["0", "1"]), v(&["1", "0"])]);
        assert_eq!(f.handle(), v(&["0", "2"]).as_slice());
        assert!(f.check_duality());
        assert!(f.check_snake());
    }

    #[test]
    fn degenerate_pairing_reports_witness() {
        let a = families::truncated_polynomial(FieldKind::Rational, 2);
        let err = FrobeniusAlgebra::new(a, v(&["1", "0"])).unwrap_err();
        assert_eq!(
            err,
            Error::DegeneratePairing {
                witness: vec!["0".into(), "1".into()]
            }
        );
    }

    #[test]
    fn simple_algebras() {
        let s2 = FrobeniusAlgebra::simple(FieldKind::Rational, q("2")).unwrap();
        assert_eq!(s2.mu(), v(&["1/2"]).as_slice());
        assert_eq!(s2.gram(), &Matrix::from_rows(vec![v(&["1/2"])]));
        assert_eq!(s2.dual_basis(), &[v(&["2"])]);
        assert_eq!(s2.handle(), v(&["2"]).as_slice());
        let s1 = FrobeniusAlgebra::simple(FieldKind::Rational, q("1")).unwrap();
        assert_eq!(s1.gram(), &Matrix::identity(1));
        assert_eq!(
            FrobeniusAlgebra::simple(FieldKind::Rational, q("0")).unwrap_err(),
            Error::ZeroLambda
        );
    }

    #[test]
    fn nilpotent_builder() {
        let a = families::truncated_polynomial(FieldKind::Rational, 2);
        assert!(FrobeniusAlgebra::nilpotent(a.clone(), v(&["0", "1"])).is_ok());
        assert!(FrobeniusAlgebra::nilpotent(a.clone(), v(&["5", "1"])).is_ok());
        assert_eq!(
            FrobeniusAlgebra::nilpotent(a, v(&["1", "0"])).unwrap_err(),
            Error::MuVanishesOnSocle
        );
        let split = families::split_pair_algebra(FieldKind::Rational);
        assert_eq!(
            FrobeniusAlgebra::nilpotent(split, v(&["1", "0"])).unwrap_err(),
            Error::SemisimpleInput
        );
        // Q[x,y]/(x², xy, y²) has a two-dimensional socle.
        let wide = families::square_zero(FieldKind::Rational, 2);
        assert_eq!(
            FrobeniusAlgebra::nilpotent(wide, v(&["0", "1", "1"])).unwrap_err(),
            Error::SocleNotOneDim { dim: 2 }
        );
    }

    #[test]
    fn direct_sum_of_simples() {
        let s1 = FrobeniusAlgebra::simple(FieldKind::Rational, q("1")).unwrap();
        let s3 = FrobeniusAlgebra::simple(FieldKind::Rational, q("3")).unwrap();
        let sum = s1.direct_sum(&s3).unwrap();
        assert_eq!(sum.dim(), 2);
        assert_eq!(sum.mu(), v(&["1", "1/3"]).as_slice());
        assert_eq!(sum.algebra().unit(), v(&["1", "1"]).as_slice());
        assert_eq!(sum.handle(), v(&["1", "3"]).as_slice());
        assert_eq!(
            sum.gram(),
            &Matrix::from_rows(vec![v(&["1", "0"]), v(&["0", "1/3"])])
        );
    }

    #[test]
    fn direct_sum_rejects_mixed_fields() {
        let a = families::truncated_polynomial(FieldKind::Prime(5), 2);
        let fp = FrobeniusAlgebra::new(
            a,
            vec![crate::scalar::Fp::new(0, 5), crate::scalar::Fp::new(1, 5)],
        )
        .unwrap();
        let b = families::truncated_polynomial(FieldKind::Prime(7), 2);
        let fp7 = FrobeniusAlgebra::new(
            b,
            vec![crate::scalar::Fp::new(0, 7), crate::scalar::Fp::new(1, 7)],
        )
        .unwrap();
        assert!(matches!(
            fp.direct_sum(&fp7),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn augmentation_examples() {
        let n2 = families::n2();
        assert_eq!(n2.augmentation().unwrap(), v(&["1", "0"]));
        assert_eq!(
            dot(&n2.augmentation().unwrap(), n2.algebra().unit()),
            q("1")
        );
        assert_eq!(
            families::sum13().augmentation().unwrap_err(),
            Error::NotLocal
        );
    }

    #[test]
    fn positivity_examples() {
        let s = |l: &str| FrobeniusAlgebra::simple(FieldKind::Rational, q(l)).unwrap();
        assert!(s("2").check_positive_definite().unwrap());
        assert!(!s("-1").check_positive_definite().unwrap());
        assert!(!families::n2().check_positive_definite().unwrap());
        let a = families::truncated_polynomial(FieldKind::Prime(5), 2);
        let fp = FrobeniusAlgebra::new(
            a,
            vec![crate::scalar::Fp::new(0, 5), crate::scalar::Fp::new(1, 5)],
        )
        .unwrap();
        assert!(matches!(
            fp.check_positive_definite(),
            Err(Error::FieldUnsupported { .. })
        ));
    }

    #[test]
    fn socle_generator_is_normalized() {
        let f = FrobeniusAlgebra::nilpotent(
            families::truncated_polynomial(FieldKind::Rational, 2),
            v(&["5", "2"]),
        )
        .unwrap();
        assert_eq!(f.socle_generator().unwrap(), v(&["0", "1/2"]));
    }
}
