//! Standard algebras and Frobenius algebras, plus seeded random generators for fuzzing.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::Algebra;
use crate::frobenius::FrobeniusAlgebra;
use crate::linalg::Matrix;
use crate::scalar::{FieldKind, Scalar};

type Q = BigRational;

fn monomial_name(exps: &[(char, usize)]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|&(v, e)| {
            if e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.concat()
    }
}

fn unit_vector<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

/// `F[x]/(x^n)` in the basis `1, x, …, x^{n-1}`.
pub fn truncated_polynomial<T: Scalar>(field: FieldKind, n: usize) -> Algebra<T> {
    bivariate_truncated(field, n, 1)
}

/// `F[x, y]/(x^a, y^b)` in the basis `x^i y^j`, `i` fastest.
pub fn bivariate_truncated<T: Scalar>(field: FieldKind, a: usize, b: usize) -> Algebra<T> {
    let n = a * b;
    let index = |i: usize, j: usize| i + a * j;
    let mut names = vec![String::new(); n];
    let mut mult = vec![vec![vec![T::zero(); n]; n]; n];
    for j1 in 0..b {
        for i1 in 0..a {
            names[index(i1, j1)] = monomial_name(&[('x', i1), ('y', j1)]);
            for j2 in 0..b {
                for i2 in 0..a {
                    if i1 + i2 < a && j1 + j2 < b {
                        mult[index(i1, j1)][index(i2, j2)] =
                            unit_vector(n, index(i1 + i2, j1 + j2));
                    }
                }
            }
        }
    }
    Algebra::new(field, names, mult, unit_vector(n, 0)).expect("monomial algebra is valid")
}

/// `F[x, y]/(x², y²)` in the basis `1, x, y, xy`.
pub fn exterior_pair<T: Scalar>(field: FieldKind) -> Algebra<T> {
    bivariate_truncated(field, 2, 2)
}

/// `F[x_1..x_k]` modulo all quadratic monomials; its socle is `k`-dimensional.
pub fn square_zero<T: Scalar>(field: FieldKind, k: usize) -> Algebra<T> {
    let n = k + 1;
    let mut mult = vec![vec![vec![T::zero(); n]; n]; n];
    for i in 0..n {
        mult[0][i] = unit_vector(n, i);
        mult[i][0] = unit_vector(n, i);
    }
    let mut names = vec!["1".to_string()];
    names.extend((1..=k).map(|i| format!("x{i}")));
    Algebra::new(field, names, mult, unit_vector(n, 0)).expect("square-zero algebra is valid")
}

/// `F × F` in the basis `a = (1, 1)`, `b = (1, -1)`: `a² = a`, `ab = b`, `b² = a`.
pub fn split_pair_algebra<T: Scalar>(field: FieldKind) -> Algebra<T> {
    quadratic_extension(field, 1)
}

/// `F[b]/(b² - d)` in the basis `1, b`.
pub fn quadratic_extension<T: Scalar>(field: FieldKind, d: i64) -> Algebra<T> {
    let a = |x: i64, y: i64| vec![T::from_i64_in(x, field), T::from_i64_in(y, field)];
    let mult = vec![vec![a(1, 0), a(0, 1)], vec![a(0, 1), a(d, 0)]];
    let names = if d == 1 {
        vec!["a".to_string(), "b".to_string()]
    } else {
        vec!["1".to_string(), "b".to_string()]
    };
    Algebra::new(field, names, mult, a(1, 0)).expect("quadratic algebra is valid")
}

/// Functional picking the coefficient of the last basis vector.
pub fn top_coefficient<T: Scalar>(n: usize) -> Vec<T> {
    unit_vector(n, n - 1)
}

fn q(n: i64) -> Q {
    Q::from_i64_in(n, FieldKind::Rational)
}

pub fn simple_q(lambda: Q) -> FrobeniusAlgebra<Q> {
    FrobeniusAlgebra::simple(FieldKind::Rational, lambda).expect("nonzero lambda")
}

/// `Q[ε]/(ε²)` with `μ = (0, 1)`.
pub fn n2() -> FrobeniusAlgebra<Q> {
    truncated_local(2)
}

/// `Q[x]/(x^n)` with `μ` the coefficient of `x^{n-1}`.
pub fn truncated_local(n: usize) -> FrobeniusAlgebra<Q> {
    FrobeniusAlgebra::nilpotent(
        truncated_polynomial(FieldKind::Rational, n),
        top_coefficient(n),
    )
    .expect("truncated polynomial algebra is Frobenius")
}

/// `Q[x, y]/(x², y²)` with `μ` the coefficient of `xy`.
pub fn qxy() -> FrobeniusAlgebra<Q> {
    FrobeniusAlgebra::nilpotent(exterior_pair(FieldKind::Rational), top_coefficient(4))
        .expect("exterior pair is Frobenius")
}

/// `S_1 ⊕ S_3` presented in the basis `a = p_1 + p_2`, `b = p_1 - p_2`, `μ = (4/3, 2/3)`.
pub fn sum13() -> FrobeniusAlgebra<Q> {
    let mu = vec![Q::new(4.into(), 3.into()), Q::new(2.into(), 3.into())];
    FrobeniusAlgebra::new(split_pair_algebra(FieldKind::Rational), mu).expect("sum13 is Frobenius")
}

/// Random integral change of basis with determinant ±1.
pub fn random_change_of_basis<T: Scalar, R: Rng>(
    n: usize,
    field: FieldKind,
    rng: &mut R,
) -> Matrix<T> {
    let mut m = Matrix::<T>::identity(n);
    if n < 2 {
        if rng.gen_bool(0.5) {
            m = m.scale(&T::from_i64_in(-1, field));
        }
        return m;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = T::from_i64_in(*[-2i64, -1, 1, 2].choose(rng).unwrap(), field);
        for r in 0..n {
            let v = m.get(r, i).clone() + c.clone() * m.get(r, j).clone();
            m.set(r, i, v);
        }
    }
    m
}

/// The indecomposables used for round-trip testing, with the invariant each should
/// decompose back to.
pub fn indecomposable_pool() -> Vec<FrobeniusAlgebra<Q>> {
    vec![
        simple_q(q(1)),
        simple_q(q(2)),
        simple_q(q(3)),
        simple_q(Q::new(1.into(), 2.into())),
        n2(),
        truncated_local(3),
        truncated_local(4),
        qxy(),
    ]
}

/// Direct sum of the given summands under a random change of basis.
pub fn scrambled_sum<R: Rng>(summands: &[FrobeniusAlgebra<Q>], rng: &mut R) -> FrobeniusAlgebra<Q> {
    let mut total = summands[0].clone();
    for s in &summands[1..] {
        total = total.direct_sum(s).expect("same field");
    }
    let change = random_change_of_basis(total.dim(), FieldKind::Rational, rng);
    total
        .change_basis(&change)
        .expect("unimodular change of basis")
}

fn random_nonzero<R: Rng>(rng: &mut R) -> Q {
    let num = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
    let den = rng.gen_range(1..=3i64);
    Q::new(num.into(), den.into())
}

/// A random indecomposable of dimension at most `max_dim` with a random admissible `μ`.
pub fn random_indecomposable<R: Rng>(max_dim: usize, rng: &mut R) -> FrobeniusAlgebra<Q> {
    loop {
        let kind = rng.gen_range(0..4);
        let algebra: Algebra<Q> = match kind {
            0 => truncated_polynomial(FieldKind::Rational, 1),
            1 => truncated_polynomial(FieldKind::Rational, rng.gen_range(2..=5)),
            2 => exterior_pair(FieldKind::Rational),
            _ => quadratic_extension(FieldKind::Rational, *[2i64, 3, -1, 5].choose(rng).unwrap()),
        };
        if algebra.dim() > max_dim {
            continue;
        }
        let n = algebra.dim();
        let mut mu: Vec<Q> = (0..n).map(|_| q(rng.gen_range(-3..=3))).collect();
        mu[n - 1] = random_nonzero(rng);
        return FrobeniusAlgebra::new(algebra, mu).expect("nonzero on the socle or a field");
    }
}

/// A random Frobenius algebra of total dimension in `1..=max_dim`.
pub fn random_frobenius<R: Rng>(max_dim: usize, rng: &mut R) -> FrobeniusAlgebra<Q> {
    let target = rng.gen_range(1..=max_dim);
    let mut blocks = Vec::new();
    let mut used = 0;
    while used < target {
        let block = random_indecomposable(target - used, rng);
        used += block.dim();
        blocks.push(block);
    }
    scrambled_sum(&blocks, rng)
}
