//! Evaluation of cobordism words as linear maps between tensor powers of a Frobenius algebra.
//!
//! Leg `k` of a width-`w` boundary is tensor factor `k`; basis tensors are flattened row-major
//! with leg 0 slowest. An operator from `m` to `n` circles is a `d^n × d^m` matrix.

use std::fmt;

use crate::cobordism::{CobordismWord, Generator, NormalForm, OpenComponent};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusAlgebra;
use crate::linalg::Matrix;
use crate::scalar::{FieldKind, Scalar};

pub const DEFAULT_SIZE_CAP: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    /// Largest admissible `d^in × d^max_width`.
    pub size_cap: u128,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOperator<T> {
    matrix: Matrix<T>,
    dim: usize,
    in_width: usize,
    out_width: usize,
}

fn power(d: usize, k: usize) -> usize {
    d.pow(k as u32)
}

impl<T: Scalar> LinearOperator<T> {
    pub fn new(matrix: Matrix<T>, dim: usize, in_width: usize, out_width: usize) -> Result<Self> {
        if matrix.rows() != power(dim, out_width) {
            return Err(Error::DimensionMismatch {
                expected: power(dim, out_width),
                got: matrix.rows(),
            });
        }
        if matrix.cols() != power(dim, in_width) {
            return Err(Error::DimensionMismatch {
                expected: power(dim, in_width),
                got: matrix.cols(),
            });
        }
        Ok(LinearOperator {
            matrix,
            dim,
            in_width,
            out_width,
        })
    }

    pub fn identity(dim: usize, width: usize) -> Self {
        LinearOperator {
            matrix: Matrix::identity(power(dim, width)),
            dim,
            in_width: width,
            out_width: width,
        }
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn in_width(&self) -> usize {
        self.in_width
    }

    pub fn out_width(&self) -> usize {
        self.out_width
    }

    /// `self` followed by `next`, i.e. the matrix product `next · self`.
    pub fn then(&self, next: &LinearOperator<T>) -> Result<Self> {
        if self.dim != next.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: next.dim,
            });
        }
        if self.out_width != next.in_width {
            return Err(Error::DimensionMismatch {
                expected: self.out_width,
                got: next.in_width,
            });
        }
        Ok(LinearOperator {
            matrix: &next.matrix * &self.matrix,
            dim: self.dim,
            in_width: self.in_width,
            out_width: next.out_width,
        })
    }

    /// Tensor product with `self` on the lower-index legs.
    pub fn tensor(&self, other: &LinearOperator<T>) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(LinearOperator {
            matrix: self.matrix.kron(&other.matrix),
            dim: self.dim,
            in_width: self.in_width + other.in_width,
            out_width: self.out_width + other.out_width,
        })
    }

    pub fn add(&self, other: &LinearOperator<T>) -> Self {
        LinearOperator {
            matrix: self.matrix.add(&other.matrix),
            ..self.clone()
        }
    }

    /// The single entry of a closed (0 → 0) operator.
    pub fn scalar(&self) -> Option<&T> {
        (self.in_width == 0 && self.out_width == 0).then(|| self.matrix.get(0, 0))
    }
}

/// Sparse local map: for each input index, the nonzero `(output index, coefficient)` pairs.
type Columns<T> = Vec<Vec<(usize, T)>>;

fn nonzero<T: Scalar>(v: Vec<T>) -> Vec<(usize, T)> {
    v.into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

/// Evaluates words in one Frobenius algebra, caching the elementary maps.
pub struct Evaluator<'a, T> {
    algebra: &'a FrobeniusAlgebra<T>,
    config: EvalConfig,
    dim: usize,
    unit: Columns<T>,
    counit: Columns<T>,
    mul: Columns<T>,
    comul: Columns<T>,
    swap: Columns<T>,
}

/// Multiplication by a fixed element on one strand, applied after boundary `boundary`
/// (0 is the input boundary).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Insertion<T> {
    pub boundary: usize,
    pub strand: usize,
    pub element: Vec<T>,
}

impl<'a, T: Scalar> Evaluator<'a, T> {
    pub fn new(algebra: &'a FrobeniusAlgebra<T>, config: EvalConfig) -> Self {
        let d = algebra.dim();
        let a = algebra.algebra();
        let one = a.scalar(1);
        let unit = vec![nonzero(a.unit().to_vec())];
        let counit = algebra
            .mu()
            .iter()
            .map(|m| {
                if m.is_zero() {
                    vec![]
                } else {
                    vec![(0, m.clone())]
                }
            })
            .collect();
        let mul = (0..d * d)
            .map(|ij| nonzero(a.structure_constants()[ij / d][ij % d].clone()))
            .collect();
        let comul = (0..d)
            .map(|j| {
                let mut out = vec![a.scalar(0); d * d];
                for (i, b) in algebra.dual_basis().iter().enumerate() {
                    let left = &a.structure_constants()[j][i];
                    for (k, x) in left.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (l, y) in b.iter().enumerate() {
                            if !y.is_zero() {
                                out[k * d + l] = out[k * d + l].clone() + x.clone() * y.clone();
                            }
                        }
                    }
                }
                nonzero(out)
            })
            .collect();
        let swap = (0..d * d)
            .map(|ij| vec![((ij % d) * d + ij / d, one.clone())])
            .collect();
        Evaluator {
            algebra,
            config,
            dim: d,
            unit,
            counit,
            mul,
            comul,
            swap,
        }
    }

    pub fn algebra(&self) -> &FrobeniusAlgebra<T> {
        self.algebra
    }

    fn check_size(&self, in_width: usize, max_width: usize) -> Result<()> {
        let d = self.dim as u128;
        let entries = d
            .checked_pow(in_width as u32)
            .and_then(|a| {
                d.checked_pow(max_width as u32)
                    .and_then(|b| a.checked_mul(b))
            })
            .unwrap_or(u128::MAX);
        if entries > self.config.size_cap {
            return Err(Error::SizeLimitExceeded {
                entries,
                cap: self.config.size_cap,
            });
        }
        Ok(())
    }

    fn columns(&self, g: Generator) -> &Columns<T> {
        match g {
            Generator::Cup => &self.unit,
            Generator::Cap => &self.counit,
            Generator::Mul => &self.mul,
            Generator::Comul => &self.comul,
            Generator::Swap => &self.swap,
            Generator::Id => unreachable!("identity is not applied"),
        }
    }

    fn multiplication_columns(&self, x: &[T]) -> Columns<T> {
        let a = self.algebra.algebra();
        (0..self.dim)
            .map(|j| nonzero(a.product(x, &a.basis_vector(j))))
            .collect()
    }

    /// Applies a local map on legs `left..left + ins` of a state with `width` legs.
    fn apply_local(
        &self,
        state: &[T],
        width: usize,
        left: usize,
        ins: usize,
        outs: usize,
        cols: &Columns<T>,
    ) -> Vec<T> {
        let d = self.dim;
        let right = width - left - ins;
        let (dl, din, dout, dr) = (
            power(d, left),
            power(d, ins),
            power(d, outs),
            power(d, right),
        );
        let mut next = vec![self.algebra.algebra().scalar(0); dl * dout * dr];
        for l in 0..dl {
            for m in 0..din {
                let base = (l * din + m) * dr;
                for r in 0..dr {
                    let v = &state[base + r];
                    if v.is_zero() {
                        continue;
                    }
                    for (m2, c) in &cols[m] {
                        let at = (l * dout + m2) * dr + r;
                        next[at] = next[at].clone() + c.clone() * v.clone();
                    }
                }
            }
        }
        next
    }

    pub fn evaluate(&self, w: &CobordismWord) -> Result<LinearOperator<T>> {
        self.evaluate_with(w, &[])
    }

    /// Evaluates `w` with extra multiplications on chosen strands.
    pub fn evaluate_with(
        &self,
        w: &CobordismWord,
        insertions: &[Insertion<T>],
    ) -> Result<LinearOperator<T>> {
        self.check_size(w.in_width(), w.max_width())?;
        let widths = w.boundary_widths();
        let mut inserts: Vec<Vec<(usize, Columns<T>)>> = vec![Vec::new(); widths.len()];
        for ins in insertions {
            if ins.boundary >= widths.len() || ins.strand >= widths[ins.boundary] {
                return Err(Error::Format(format!(
                    "no strand {} at boundary {}",
                    ins.strand, ins.boundary
                )));
            }
            inserts[ins.boundary].push((ins.strand, self.multiplication_columns(&ins.element)));
        }
        let d = self.dim;
        let zero = self.algebra.algebra().scalar(0);
        let one = self.algebra.algebra().scalar(1);
        let cols_in = power(d, w.in_width());
        let mut matrix = Matrix::from_fn(power(d, w.out_width()), cols_in, |_, _| zero.clone());
        for c in 0..cols_in {
            let mut state = vec![zero.clone(); cols_in];
            state[c] = one.clone();
            for (strand, cols) in &inserts[0] {
                state = self.apply_local(&state, widths[0], *strand, 1, 1, cols);
            }
            for (k, layer) in w.layers().iter().enumerate() {
                let mut width = widths[k];
                let mut offset = 0;
                for &g in layer {
                    let (ins, outs) = g.arity();
                    if g != Generator::Id {
                        state = self.apply_local(&state, width, offset, ins, outs, self.columns(g));
                        width = width + outs - ins;
                    }
                    offset += outs;
                }
                for (strand, cols) in &inserts[k + 1] {
                    state = self.apply_local(&state, width, *strand, 1, 1, cols);
                }
                if state.iter().all(|x| x.is_zero()) {
                    state = vec![zero.clone(); power(d, widths[widths.len() - 1])];
                    break;
                }
            }
            for (r, v) in state.into_iter().enumerate() {
                if !v.is_zero() {
                    matrix.set(r, c, v);
                }
            }
        }
        LinearOperator::new(matrix, d, w.in_width(), w.out_width())
    }

    /// Operator of one connected component: product of the inputs, times `H^g`, then the
    /// iterated coproduct. Returned as columns of length `d^outputs`.
    fn component_columns(&self, c: &OpenComponent) -> Vec<Vec<T>> {
        let a = self.algebra.algebra();
        let d = self.dim;
        let handle = self.algebra.handle_power(c.genus as u32);
        let m = c.inputs.len();
        let n = c.outputs.len();
        (0..power(d, m))
            .map(|col| {
                let mut x = a.unit().to_vec();
                for k in 0..m {
                    let digit = (col / power(d, m - 1 - k)) % d;
                    x = a.product(&x, &a.basis_vector(digit));
                }
                let y = a.product(&x, &handle);
                if n == 0 {
                    return vec![self.algebra.counit(&y)];
                }
                let mut state = y;
                for width in 1..n {
                    state = self.apply_local(&state, width, width - 1, 1, 2, &self.comul);
                }
                state
            })
            .collect()
    }

    /// Evaluates a normal form directly from its component data.
    pub fn evaluate_normal(&self, nf: &NormalForm) -> Result<LinearOperator<T>> {
        self.check_size(nf.in_width, nf.in_width.max(nf.out_width))?;
        let d = self.dim;
        let a = self.algebra.algebra();
        let mut closed = a.scalar(1);
        for c in &nf.closed_components {
            closed = closed * closed_invariant(self.algebra, c.genus as u32);
        }
        let blocks: Vec<Vec<Vec<(usize, T)>>> = nf
            .open_components
            .iter()
            .map(|c| self.component_columns(c).into_iter().map(nonzero).collect())
            .collect();
        let cols_in = power(d, nf.in_width);
        let zero = a.scalar(0);
        let mut matrix = Matrix::from_fn(power(d, nf.out_width), cols_in, |_, _| zero.clone());
        if closed.is_zero() {
            return LinearOperator::new(matrix, d, nf.in_width, nf.out_width);
        }
        let digit =
            |index: usize, width: usize, leg: usize| (index / power(d, width - 1 - leg)) % d;
        for col in 0..cols_in {
            // Partial sums over components: (global output index, coefficient).
            let mut terms: Vec<(usize, T)> = vec![(0, closed.clone())];
            for (c, block) in nf.open_components.iter().zip(&blocks) {
                let mut local = 0;
                for &leg in &c.inputs {
                    local = local * d + digit(col, nf.in_width, leg);
                }
                let n = c.outputs.len();
                let mut next = Vec::new();
                for (index, coeff) in &terms {
                    for (out, v) in &block[local] {
                        let mut global = *index;
                        for (k, &leg) in c.outputs.iter().enumerate() {
                            global += digit(*out, n, k) * power(d, nf.out_width - 1 - leg);
                        }
                        next.push((global, coeff.clone() * v.clone()));
                    }
                }
                terms = next;
                if terms.is_empty() {
                    break;
                }
            }
            for (row, v) in terms {
                let total = matrix.get(row, col).clone() + v;
                matrix.set(row, col, total);
            }
        }
        LinearOperator::new(matrix, d, nf.in_width, nf.out_width)
    }
}

/// The elementary map of a single generator.
pub fn elementary_operator<T: Scalar>(g: Generator, f: &FrobeniusAlgebra<T>) -> LinearOperator<T> {
    let ev = Evaluator::new(f, EvalConfig::default());
    let (ins, outs) = g.arity();
    if g == Generator::Id {
        return LinearOperator::identity(f.dim(), 1);
    }
    let d = f.dim();
    let zero = f.algebra().scalar(0);
    let mut matrix = Matrix::from_fn(power(d, outs), power(d, ins), |_, _| zero.clone());
    for (c, col) in ev.columns(g).iter().enumerate() {
        for (r, v) in col {
            matrix.set(*r, c, v.clone());
        }
    }
    LinearOperator::new(matrix, d, ins, outs).expect("generator shape")
}

pub fn evaluate_word<T: Scalar>(
    w: &CobordismWord,
    f: &FrobeniusAlgebra<T>,
    config: &EvalConfig,
) -> Result<LinearOperator<T>> {
    Evaluator::new(f, *config).evaluate(w)
}

pub fn evaluate_normal<T: Scalar>(
    nf: &NormalForm,
    f: &FrobeniusAlgebra<T>,
    config: &EvalConfig,
) -> Result<LinearOperator<T>> {
    Evaluator::new(f, *config).evaluate_normal(nf)
}

/// `μ(H^g)`, the value on the closed surface of genus `g`.
pub fn closed_invariant<T: Scalar>(f: &FrobeniusAlgebra<T>, genus: u32) -> T {
    f.counit(&f.handle_power(genus))
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Structured list of checks, printed one `PASS`/`FAIL` line per check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{status} {}", c.name)?;
            } else {
                writeln!(f, "{status} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

fn canonical_and_alternate_positions(w: &CobordismWord) -> ((usize, usize), (usize, usize)) {
    let widths = w.boundary_widths();
    let first = widths
        .iter()
        .position(|&x| x > 0)
        .expect("a layer has strands");
    let last = widths
        .iter()
        .rposition(|&x| x > 0)
        .expect("a layer has strands");
    ((first, 0), (last, widths[last] - 1))
}

/// Checks that `Z = Z_1 + Z_2` on a connected word for `F = F_1 ⊕ F_2`, where `Z_i` inserts
/// the idempotent `p_i` on one strand.
pub fn verify_direct_sum<T: Scalar>(
    f1: &FrobeniusAlgebra<T>,
    f2: &FrobeniusAlgebra<T>,
    w: &CobordismWord,
    config: &EvalConfig,
) -> Result<Report> {
    let nf = w.normal_form();
    if nf.component_count() != 1 {
        return Err(Error::NotConnected {
            components: nf.component_count(),
        });
    }
    let f = f1.direct_sum(f2)?;
    let (d1, d2) = (f1.dim(), f2.dim());
    let zero = f.algebra().scalar(0);
    let mut p1 = f1.algebra().unit().to_vec();
    p1.extend(std::iter::repeat_n(zero.clone(), d2));
    let mut p2 = vec![zero.clone(); d1];
    p2.extend_from_slice(f2.algebra().unit());

    let ev = Evaluator::new(&f, *config);
    let z = ev.evaluate(w)?;
    let (canonical, alternate) = canonical_and_alternate_positions(w);
    let at = |(boundary, strand): (usize, usize), p: &[T]| Insertion {
        boundary,
        strand,
        element: p.to_vec(),
    };
    let widths = w.boundary_widths();
    let last = widths.len() - 1;

    let mut report = Report::default();
    let mut parts = Vec::new();
    for (i, (p, fi, offset)) in [(&p1, f1, 0usize), (&p2, f2, d1)].into_iter().enumerate() {
        let label = i + 1;
        let zi = ev.evaluate_with(w, &[at(canonical, p)])?;
        let alt = ev.evaluate_with(w, &[at(alternate, p)])?;
        report.push(
            format!("Z{label} puncture position independence"),
            alt == zi,
            "",
        );
        let twice = ev.evaluate_with(w, &[at(canonical, p), at(alternate, p)])?;
        report.push(format!("Z{label} two punctures equal one"), twice == zi, "");
        let mut invariant = true;
        for strand in 0..w.in_width() {
            invariant &= ev.evaluate_with(w, &[at(canonical, p), at((0, strand), p)])? == zi;
        }
        for strand in 0..w.out_width() {
            invariant &= ev.evaluate_with(w, &[at(canonical, p), at((last, strand), p)])? == zi;
        }
        report.push(
            format!("Z{label} invariant under p{label} on inputs and outputs"),
            invariant,
            "",
        );
        let direct = evaluate_word(w, fi, config)?;
        let embedded = embed_block(&direct, f.dim(), offset, &zero);
        report.push(
            format!("Z{label} equals the block evaluation"),
            embedded == zi,
            "",
        );
        parts.push(zi);
    }
    let sum = parts[0].add(&parts[1]);
    report.push("Z1 + Z2 = Z", sum == z, "");
    Ok(report)
}

/// Places an operator over a summand into the ambient tensor powers, where the summand's
/// basis sits at indices `offset..offset + dim`.
fn embed_block<T: Scalar>(
    op: &LinearOperator<T>,
    ambient: usize,
    offset: usize,
    zero: &T,
) -> LinearOperator<T> {
    let d = op.dim();
    let lift = |index: usize, width: usize| -> usize {
        (0..width).fold(0, |acc, leg| {
            let digit = (index / power(d, width - 1 - leg)) % d;
            acc * ambient + digit + offset
        })
    };
    let mut matrix = Matrix::from_fn(
        power(ambient, op.out_width()),
        power(ambient, op.in_width()),
        |_, _| zero.clone(),
    );
    for r in 0..op.matrix().rows() {
        for c in 0..op.matrix().cols() {
            let v = op.matrix().get(r, c);
            if !v.is_zero() {
                matrix.set(lift(r, op.out_width()), lift(c, op.in_width()), v.clone());
            }
        }
    }
    LinearOperator::new(matrix, ambient, op.in_width(), op.out_width()).expect("embedded shape")
}

/// `λ^k` for any integer `k`.
fn int_power<T: Scalar>(lambda: &T, k: i64, field: FieldKind) -> T {
    let base = if k < 0 {
        lambda.inverse().expect("nonzero lambda")
    } else {
        lambda.clone()
    };
    let mut out = T::from_i64_in(1, field);
    for _ in 0..k.unsigned_abs() {
        out = out * base.clone();
    }
    out
}

/// Checks the Euler-characteristic formula for the one-dimensional theory with
/// `μ(1) = 1/λ`.
///
/// For a connected component of genus `g` with `m` inputs and `n` outputs the value in the
/// standard basis is `λ^{g+n-1}`; squaring removes the square root in the rescaled form, giving
/// `value² · λ^{m-n} = λ^{-χ}`. Closed words satisfy `value = λ^{-χ/2}` exactly.
pub fn simple_euler_check<T: Scalar>(
    field: FieldKind,
    lambda: &T,
    w: &CobordismWord,
    config: &EvalConfig,
) -> Result<Report> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    let f = FrobeniusAlgebra::simple(field, lambda.clone())?;
    let ev = Evaluator::new(&f, *config);
    let value = ev.evaluate(w)?.matrix().get(0, 0).clone();
    let chi = w.euler_char();
    let nf = w.normal_form();
    let mut report = Report::default();

    let mut natural = int_power(lambda, 0, field);
    for c in &nf.open_components {
        natural = natural * int_power(lambda, c.genus as i64 + c.outputs.len() as i64 - 1, field);
    }
    for c in &nf.closed_components {
        natural = natural * int_power(lambda, c.genus as i64 - 1, field);
    }
    report.push(
        "value is the product of λ^(g+n-1) over components",
        value == natural,
        format!("value {value}, expected {natural}"),
    );

    for (k, c) in nf.open_components.iter().enumerate() {
        let piece = CobordismWord::connected(c.genus, c.inputs.len(), c.outputs.len());
        let v = ev.evaluate(&piece)?.matrix().get(0, 0).clone();
        let (m, n) = (c.inputs.len() as i64, c.outputs.len() as i64);
        let lhs = v.clone() * v * int_power(lambda, m - n, field);
        let rhs = int_power(lambda, -c.euler_char(), field);
        report.push(
            format!("component {k}: value² · λ^(m-n) = λ^(-χ)"),
            lhs == rhs,
            format!("{lhs} vs {rhs}"),
        );
    }
    let (m, n) = (w.in_width() as i64, w.out_width() as i64);
    let lhs = value.clone() * value.clone() * int_power(lambda, m - n, field);
    let rhs = int_power(lambda, -chi, field);
    report.push(
        "word: value² · λ^(m-n) = λ^(-χ)",
        lhs == rhs,
        format!("{lhs} vs {rhs}"),
    );
    if m == 0 && n == 0 {
        let expected = int_power(lambda, -chi / 2, field);
        report.push(
            "closed: value = λ^(-χ/2)",
            value == expected,
            format!("{value} vs {expected}"),
        );
    }
    Ok(report)
}

/// Checks `evaluate_word(w) = evaluate_normal(normal_form(w))`.
pub fn oracle_agrees<T: Scalar>(ev: &Evaluator<'_, T>, w: &CobordismWord) -> Result<bool> {
    Ok(ev.evaluate(w)? == ev.evaluate_normal(&w.normal_form())?)
}
