//! Finite-dimensional commutative unital algebras given by structure constants.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::poly::Poly;
use crate::scalar::{FieldKind, Scalar};

/// A commutative, associative, unital algebra over an exact field.
///
/// `mult[i][j]` holds the coordinates of `a_i · a_j` in the basis `a_0, …, a_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra<T> {
    field: FieldKind,
    basis_names: Vec<String>,
    mult: Vec<Vec<Vec<T>>>,
    unit: Vec<T>,
}

/// Ideal chain `N_1 ⊂ N_2 ⊂ … ⊂ N_n = A` of a local algebra with one-dimensional socle,
/// together with a basis adapted to it (socle first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealChain<T> {
    pub levels: Vec<Subspace<T>>,
    pub adapted_basis: Vec<Vec<T>>,
}

impl<T: Scalar> Algebra<T> {
    /// Validates dimensions, commutativity, associativity and the unit law exhaustively.
    pub fn new(
        field: FieldKind,
        basis_names: Vec<String>,
        mult: Vec<Vec<Vec<T>>>,
        unit: Vec<T>,
    ) -> Result<Self> {
        let algebra = Algebra::from_parts(field, basis_names, mult, unit)?;
        algebra.check_laws()?;
        Ok(algebra)
    }

    /// Shape checks only; the algebraic laws are trusted.
    pub(crate) fn from_parts(
        field: FieldKind,
        basis_names: Vec<String>,
        mult: Vec<Vec<Vec<T>>>,
        unit: Vec<T>,
    ) -> Result<Self> {
        if !T::supports(field) {
            return Err(Error::FieldUnsupported {
                field,
                reason: "scalar type does not represent this field".into(),
            });
        }
        let n = basis_names.len();
        if n == 0 {
            return Err(Error::EmptyAlgebra);
        }
        let check = |got: usize| {
            if got == n {
                Ok(())
            } else {
                Err(Error::DimensionMismatch { expected: n, got })
            }
        };
        check(mult.len())?;
        for row in &mult {
            check(row.len())?;
            for v in row {
                check(v.len())?;
            }
        }
        check(unit.len())?;
        let attach = |v: Vec<T>| v.into_iter().map(|x| x.attach(field)).collect::<Vec<T>>();
        let mult = mult
            .into_iter()
            .map(|row| row.into_iter().map(attach).collect())
            .collect();
        Ok(Algebra {
            field,
            basis_names,
            mult,
            unit: attach(unit),
        })
    }

    /// Checks commutativity, associativity on all basis triples, and the unit law.
    pub fn check_laws(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                if self.mult[i][j] != self.mult[j][i] {
                    return Err(Error::NonCommutative { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.product(&self.mult[i][j], &self.basis_vector(k));
                    let right = self.product(&self.basis_vector(i), &self.mult[j][k]);
                    if left != right {
                        return Err(Error::NonAssociative { i, j, k });
                    }
                }
            }
        }
        for i in 0..n {
            if self.product(&self.unit, &self.basis_vector(i)) != self.basis_vector(i) {
                return Err(Error::BadUnit { i });
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> &[T] {
        &self.unit
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<T>>] {
        &self.mult
    }

    /// The integer `n` as a field element.
    pub fn scalar(&self, n: i64) -> T {
        T::from_i64_in(n, self.field)
    }

    pub fn zero_vector(&self) -> Vec<T> {
        vec![T::zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<T> {
        let mut v = self.zero_vector();
        v[i] = T::one();
        v
    }

    fn check_len(&self, v: &[T]) -> Result<()> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            })
        }
    }

    pub fn multiply(&self, x: &[T], y: &[T]) -> Result<Vec<T>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.product(x, y))
    }

    /// Bilinear extension of the structure constants; panics on length mismatch.
    pub(crate) fn product(&self, x: &[T], y: &[T]) -> Vec<T> {
        let mut out = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.clone() * yj.clone();
                for (o, s) in out.iter_mut().zip(&self.mult[i][j]) {
                    if !s.is_zero() {
                        *o = o.clone() + c.clone() * s.clone();
                    }
                }
            }
        }
        out
    }

    pub fn power(&self, x: &[T], k: u32) -> Vec<T> {
        (0..k).fold(self.unit.clone(), |acc, _| self.product(&acc, x))
    }

    /// Matrix of `y ↦ x·y` (the regular representation).
    pub fn mult_operator(&self, x: &[T]) -> Result<Matrix<T>> {
        self.check_len(x)?;
        let columns: Vec<Vec<T>> = (0..self.dim())
            .map(|j| self.product(x, &self.basis_vector(j)))
            .collect();
        Ok(Matrix::from_columns(self.dim(), &columns))
    }

    /// `x` is nilpotent iff `L_x^dim = 0`.
    pub fn is_nilpotent(&self, x: &[T]) -> Result<bool> {
        Ok(self.mult_operator(x)?.pow(self.dim() as u32).is_zero())
    }

    /// The trace form `T(x, y) = tr(L_{xy})` on basis pairs.
    pub fn trace_form(&self) -> Matrix<T> {
        let n = self.dim();
        // tr(L_{a_k}) = Σ_j c_{kj}^j
        let traces: Vec<T> = (0..n)
            .map(|k| (0..n).fold(T::zero(), |acc, j| acc + self.mult[k][j][j].clone()))
            .collect();
        Matrix::from_fn(n, n, |i, j| crate::linalg::dot(&self.mult[i][j], &traces))
    }

    /// The ideal of nilpotent elements, as the kernel of the trace form.
    pub fn nilradical(&self) -> Result<Subspace<T>> {
        self.field.require_large_characteristic(self.dim())?;
        Ok(Subspace::span(self.dim(), &self.trace_form().kernel()))
    }

    /// Elements annihilated by every nilpotent; the whole algebra when there are none.
    pub fn socle(&self) -> Result<Subspace<T>> {
        let radical = self.nilradical()?;
        self.annihilator_of(&radical)
    }

    fn annihilator_of(&self, ideal: &Subspace<T>) -> Result<Subspace<T>> {
        if ideal.is_zero() {
            return Ok(Subspace::full(self.dim()));
        }
        let maps = ideal
            .basis()
            .iter()
            .map(|v| self.mult_operator(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::zero(self.dim()).preimage(&maps))
    }

    /// Smallest `k` with `rad^k = 0` (1 for semisimple algebras).
    pub fn nilpotency_index(&self) -> Result<usize> {
        let radical = self.nilradical()?;
        let mut power = radical.clone();
        let mut k = 1;
        while !power.is_zero() {
            let mut products = Vec::new();
            for v in power.basis() {
                for w in radical.basis() {
                    products.push(self.product(v, w));
                }
            }
            power = Subspace::span(self.dim(), &products);
            k += 1;
        }
        Ok(k)
    }

    /// `N_1` = socle, `N_k` = preimage of the socle of `A/N_{k-1}`.
    pub fn ideal_chain(&self) -> Result<IdealChain<T>> {
        let radical = self.nilradical()?;
        let socle = self.annihilator_of(&radical)?;
        if radical.is_zero() || socle.dim() != 1 {
            return Err(Error::NotNilpotentType {
                radical_dim: radical.dim(),
                socle_dim: socle.dim(),
            });
        }
        let radical_maps = radical
            .basis()
            .iter()
            .map(|v| self.mult_operator(v))
            .collect::<Result<Vec<_>>>()?;
        let mut levels = vec![socle];
        while levels.last().unwrap().dim() < self.dim() {
            let prev = levels.last().unwrap();
            let next = prev.preimage(&radical_maps);
            debug_assert!(
                next.dim() > prev.dim(),
                "chain stalls only for non-local algebras"
            );
            if next.dim() == prev.dim() {
                return Err(Error::NotNilpotentType {
                    radical_dim: radical.dim(),
                    socle_dim: 1,
                });
            }
            levels.push(next);
        }
        let mut adapted: Vec<Vec<T>> = Vec::new();
        for level in &levels {
            for v in level.basis() {
                let mut candidate = adapted.clone();
                candidate.push(v.clone());
                if Subspace::span(self.dim(), &candidate).dim() == candidate.len() {
                    adapted = candidate;
                }
            }
        }
        Ok(IdealChain {
            levels,
            adapted_basis: adapted,
        })
    }

    pub fn is_ideal(&self, subspace: &Subspace<T>) -> bool {
        subspace.basis().iter().all(|v| {
            (0..self.dim()).all(|i| subspace.contains(&self.product(&self.basis_vector(i), v)))
        })
    }

    /// Minimal polynomial of `x`, found from the first dependency among `1, x, x², …`.
    pub fn min_poly(&self, x: &[T]) -> Poly<T> {
        let n = self.dim();
        let mut powers: Vec<Vec<T>> = vec![self.unit.clone()];
        loop {
            let next = self.product(powers.last().unwrap(), x);
            let columns: Vec<Vec<T>> = powers.to_vec();
            let m = Matrix::from_columns(n, &columns);
            if let Some(coeffs) = m.solve(&next) {
                // x^k = Σ c_i x^i  ⇒  t^k - Σ c_i t^i
                let mut poly: Vec<T> = coeffs
                    .into_iter()
                    .map(|c| (-c).attach(self.field))
                    .collect();
                poly.push(self.scalar(1));
                return Poly::new(poly);
            }
            powers.push(next);
        }
    }

    pub fn eval_poly(&self, p: &Poly<T>, x: &[T]) -> Vec<T> {
        let mut acc = self.zero_vector();
        for c in p.coeffs().iter().rev() {
            acc = self.product(&acc, x);
            for (a, u) in acc.iter_mut().zip(&self.unit) {
                *a = a.clone() + c.clone() * u.clone();
            }
        }
        acc
    }

    /// Re-expresses the algebra in the basis given by the columns of `change`.
    pub fn change_basis(&self, change: &Matrix<T>) -> Result<Algebra<T>> {
        let n = self.dim();
        if change.rows() != n || change.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: change.rows(),
            });
        }
        let inverse = change.inverse().ok_or(Error::SingularMatrix)?;
        let new_basis: Vec<Vec<T>> = (0..n).map(|j| change.column(j)).collect();
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| inverse.mul_vec(&self.product(&new_basis[i], &new_basis[j])))
                    .collect()
            })
            .collect();
        let names = (0..n).map(|i| format!("b{i}")).collect();
        Algebra::from_parts(self.field, names, mult, inverse.mul_vec(&self.unit))
    }

    /// Block-diagonal direct sum; basis names that collide get a summand suffix.
    pub fn direct_sum(&self, other: &Algebra<T>) -> Result<Algebra<T>> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        let (n1, n2) = (self.dim(), other.dim());
        let n = n1 + n2;
        let embed = |v: &[T], offset: usize| {
            let mut out = vec![T::zero(); n];
            for (i, x) in v.iter().enumerate() {
                out[offset + i] = x.clone();
            }
            out
        };
        let mut mult = vec![vec![vec![T::zero(); n]; n]; n];
        for i in 0..n1 {
            for j in 0..n1 {
                mult[i][j] = embed(&self.mult[i][j], 0);
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                mult[n1 + i][n1 + j] = embed(&other.mult[i][j], n1);
            }
        }
        let mut unit = embed(&self.unit, 0);
        for (i, u) in other.unit.iter().enumerate() {
            unit[n1 + i] = u.clone();
        }
        let mut names: Vec<String> = self.basis_names.clone();
        for name in &other.basis_names {
            let mut candidate = name.clone();
            let mut k = 2;
            while names.contains(&candidate) {
                candidate = format!("{name}_{k}");
                k += 1;
            }
            names.push(candidate);
        }
        Algebra::from_parts(self.field, names, mult, unit)
    }

    /// The subalgebra `subspace` with identity `unit`, in the echelon basis of `subspace`.
    pub(crate) fn restrict(&self, subspace: &Subspace<T>, unit: &[T]) -> Algebra<T> {
        let basis = subspace.basis();
        let coords = |v: &[T]| {
            subspace
                .coordinates(v)
                .expect("subspace is closed under multiplication")
        };
        let mult = basis
            .iter()
            .map(|x| basis.iter().map(|y| coords(&self.product(x, y))).collect())
            .collect();
        let names = (0..basis.len()).map(|i| format!("c{i}")).collect();
        Algebra::from_parts(self.field, names, mult, coords(unit))
            .expect("restriction of a valid algebra")
    }
}
