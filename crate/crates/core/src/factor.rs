//! Polynomial factorization over prime fields and over the integers.
//!
//! Mod-p factoring is distinct-degree splitting followed by Cantor-Zassenhaus equal-degree
//! splitting. Integer factoring is Zassenhaus: factor modulo a small good prime, Hensel-lift
//! to a modulus above the Mignotte bound, and recombine lifted factors by trial division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{is_prime, mul_mod, pow_mod};

/// Arithmetic on polynomials over `Z/pZ`, coefficients lowest degree first.
#[derive(Clone, Copy, Debug)]
struct Zp {
    p: u64,
}

impl Zp {
    fn trim(&self, mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0) as u128 + *b.get(i).unwrap_or(&0) as u128;
                (x % self.p as u128) as u64
            })
            .collect();
        self.trim(out)
    }

    fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let neg: Vec<u64> = b.iter().map(|&c| (self.p - c) % self.p).collect();
        self.add(a, &neg)
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % self.p as u128) as u64;
            }
        }
        self.trim(out)
    }

    fn scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        self.trim(a.iter().map(|&x| mul_mod(x, c, self.p)).collect())
    }

    fn inv(&self, c: u64) -> u64 {
        assert!(!c.is_multiple_of(self.p), "inverting zero mod {}", self.p);
        pow_mod(c, self.p - 2, self.p)
    }

    fn monic(&self, a: &[u64]) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, self.inv(l)),
        }
    }

    fn div_rem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let d = b.len().checked_sub(1).expect("division by zero polynomial");
        if a.len() <= d {
            return (Vec::new(), a.to_vec());
        }
        let lead_inv = self.inv(b[d]);
        let mut rem = a.to_vec();
        let mut quot = vec![0u64; a.len() - d];
        for k in (0..a.len() - d).rev() {
            let c = mul_mod(rem[k + d], lead_inv, self.p);
            if c == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let t = mul_mod(c, y, self.p);
                rem[k + j] = (rem[k + j] + self.p - t) % self.p;
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (self.trim(quot), self.trim(rem))
    }

    fn rem(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.div_rem(a, b).1
    }

    fn gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("ext_gcd of zero polynomials"));
        (
            self.scale(&r0, inv),
            self.scale(&s0, inv),
            self.scale(&t0, inv),
        )
    }

    fn derivative(&self, a: &[u64]) -> Vec<u64> {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    fn pow_mod(&self, base: &[u64], exp: &BigUint, modulus: &[u64]) -> Vec<u64> {
        let mut acc = vec![1u64];
        let base = self.rem(base, modulus);
        for i in (0..exp.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), modulus);
            if exp.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), modulus);
            }
        }
        self.rem(&acc, modulus)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    fn distinct_degree(&self, f: &[u64]) -> Vec<(Vec<u64>, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = self.rem(&x, &f);
        let mut d = 0;
        let p = BigUint::from(self.p);
        while f.len() > 2 * (d + 1) {
            d += 1;
            h = self.pow_mod(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        if f.len() > 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
        }
        out
    }

    /// Splits a product of distinct irreducibles of degree `d` (requires odd `p`).
    fn equal_degree(&self, g: &[u64], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
        let n = g.len() - 1;
        if n == d {
            out.push(g.to_vec());
            return;
        }
        assert!(self.p % 2 == 1, "equal-degree splitting needs an odd prime");
        let exp = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Vec<u64> = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.pow_mod(&a, &exp, g), &[1]);
            let c = self.gcd(&b, g);
            if c.len() > 1 && c.len() < g.len() {
                let rest = self.div_rem(g, &c).0;
                self.equal_degree(&c, d, rng, out);
                self.equal_degree(&rest, d, rng, out);
                return;
            }
        }
    }

    /// Monic irreducible factors of a squarefree polynomial.
    fn factor_squarefree(&self, f: &[u64]) -> Vec<Vec<u64>> {
        let f = self.monic(f);
        if f.len() <= 2 {
            return vec![f];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(&f) {
            self.equal_degree(&g, d, &mut rng, &mut out);
        }
        out.sort();
        out
    }
}

/// Monic irreducible factors over `Z/pZ` of a squarefree polynomial given by residues.
pub(crate) fn factor_squarefree_mod_p(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let zp = Zp { p };
    let f = zp.trim(f.iter().map(|&c| c % p).collect());
    zp.factor_squarefree(&f)
}

fn trim_int(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
fn primitive_part(a: &[BigInt]) -> Vec<BigInt> {
    let mut c = content(a);
    if a.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x / &c).collect()
}

fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_int(out)
}

/// Exact quotient `a / b` over Z, or `None` when `b` does not divide `a`.
fn exact_div_int(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let d = b.len() - 1;
    if a.len() <= d {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let lead = &b[d];
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - d];
    for k in (0..a.len() - d).rev() {
        let (c, r) = rem[k + d].div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= &c * y;
        }
        quot[k] = c;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(trim_int(quot))
    } else {
        None
    }
}

fn reduce_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    trim_int(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    trim_int(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_residues(a: &[BigInt], p: u64) -> Vec<u64> {
    let m = BigInt::from(p);
    a.iter()
        .map(|c| c.mod_floor(&m).to_u64().unwrap())
        .collect()
}

fn from_residues(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Lifts `f ≡ g·h (mod p)`, `g` monic, to `f ≡ G·H (mod p^k)`.
fn hensel_two(zp: Zp, f: &[BigInt], g: &[u64], h: &[u64], k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (one, s, t) = zp.ext_gcd(g, h);
    debug_assert_eq!(one, vec![1]);
    let p = BigInt::from(zp.p);
    let mut big_g = from_residues(g);
    let mut big_h = from_residues(h);
    // Fix the exact leading coefficient so f - GH stays below deg f.
    *big_h.last_mut().unwrap() = f.last().unwrap().clone();
    let mut pk = p.clone();
    for _ in 1..k {
        let gh = mul_int(&big_g, &big_h);
        let n = f.len().max(gh.len());
        let e: Vec<BigInt> = (0..n)
            .map(|i| {
                let diff =
                    f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default();
                debug_assert!((&diff % &pk).is_zero());
                diff / &pk
            })
            .collect();
        let e = zp.trim(to_residues(&e, zp.p));
        let te = zp.mul(&t, &e);
        let (q, dg) = zp.div_rem(&te, g);
        let dh = zp.add(&zp.mul(&s, &e), &zp.mul(&q, h));
        let next = &pk * &p;
        big_g = reduce_mod(&add_scaled(&big_g, &dg, &pk), &next);
        big_h = reduce_mod(&add_scaled(&big_h, &dh, &pk), &next);
        pk = next;
    }
    (big_g, big_h)
}

fn add_scaled(a: &[BigInt], delta: &[u64], scale: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(delta.len());
    (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_default()
                + scale * BigInt::from(*delta.get(i).unwrap_or(&0))
        })
        .collect()
}

/// Lifts all mod-p factors of `f` (monic, `f ≡ lc·Π factors`) to monic factors mod `p^k`.
fn hensel_all(zp: Zp, f: &[BigInt], factors: &[Vec<u64>], k: u32) -> Vec<Vec<BigInt>> {
    let modulus = BigInt::from(zp.p).pow(k);
    if factors.len() == 1 {
        let inv = mod_inverse(f.last().unwrap(), &modulus);
        let scaled: Vec<BigInt> = f.iter().map(|c| c * &inv).collect();
        return vec![reduce_mod(&scaled, &modulus)];
    }
    let lc_mod_p = to_residues(&[f.last().unwrap().clone()], zp.p)[0];
    let rest = factors[1..]
        .iter()
        .fold(vec![lc_mod_p], |acc, g| zp.mul(&acc, g));
    let (g, h) = hensel_two(zp, f, &factors[0], &rest, k);
    let mut out = vec![g];
    out.extend(hensel_all(zp, &h, &factors[1..], k));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors over Z of a squarefree integer polynomial, each primitive with
/// positive leading coefficient.
pub(crate) fn factor_squarefree_integer(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let f = primitive_part(&trim_int(f.to_vec()));
    let n = f.len().saturating_sub(1);
    if n <= 1 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();

    // Pick, among the first few good primes, the one giving the fewest modular factors.
    let mut best: Option<(Zp, Vec<Vec<u64>>)> = None;
    let mut good = 0;
    for p in (3u64..).filter(|&p| is_prime(p)) {
        let zp = Zp { p };
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = zp.trim(to_residues(&f, p));
        if zp.gcd(&fp, &zp.derivative(&fp)).len() != 1 {
            continue;
        }
        let factors = zp.factor_squarefree(&fp);
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((zp, factors));
        }
        good += 1;
        if good == 5 {
            break;
        }
    }
    let (zp, modular) = best.expect("a good prime exists for a squarefree polynomial");
    if modular.len() == 1 {
        return vec![f];
    }

    // Factor coefficients are bounded by 2^n·|f|_1; recovering lc·g needs twice lc times that.
    let norm: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2u32) * &lc * (BigInt::one() << n) * norm;
    let p = BigInt::from(zp.p);
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let mut lifted = hensel_all(zp, &f, &modular, k);

    let mut found = Vec::new();
    let mut rest = f;
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), size) {
            let lead = rest.last().unwrap().clone();
            let product = subset.iter().fold(vec![lead], |acc, &i| {
                reduce_mod(&mul_int(&acc, &lifted[i]), &pk)
            });
            let candidate = primitive_part(&symmetric_mod(&product, &pk));
            if candidate.len() < 2 {
                continue;
            }
            if let Some(q) = exact_div_int(&rest, &candidate) {
                hit = Some((subset, candidate, q));
                break;
            }
        }
        match hit {
            Some((subset, candidate, q)) => {
                found.push(candidate);
                rest = primitive_part(&q);
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if rest.len() > 1 {
        found.push(rest);
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(cs: &[i64]) -> Vec<BigInt> {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn product(fs: &[Vec<BigInt>]) -> Vec<BigInt> {
        fs.iter().fold(ints(&[1]), |acc, f| mul_int(&acc, f))
    }

    #[test]
    fn mod_p_factoring_matches_brute_force_roots() {
        // t^3 - t = t (t-1) (t+1) over F_5, and t^2 - 2 irreducible over F_5.
        assert_eq!(
            factor_squarefree_mod_p(&[0, 4, 0, 1], 5),
            vec![vec![0, 1], vec![1, 1], vec![4, 1]]
        );
        assert_eq!(factor_squarefree_mod_p(&[3, 0, 1], 5), vec![vec![3, 0, 1]]);
        // t^2 - 1 over F_7
        assert_eq!(
            factor_squarefree_mod_p(&[6, 0, 1], 7),
            vec![vec![1, 1], vec![6, 1]]
        );
    }

    #[test]
    fn integer_factoring_recovers_products() {
        let cases = [
            vec![ints(&[-2, 0, 1])],
            vec![ints(&[-1, 2]), ints(&[3, 1])],
            vec![ints(&[-2, 0, 1]), ints(&[-3, 0, 1])],
            vec![ints(&[1, 0, 1]), ints(&[1, 1, 1]), ints(&[5, 3])],
            vec![ints(&[1, 0, 0, 0, 1])],
            vec![ints(&[-1, 1]), ints(&[1, 1]), ints(&[-2, 1]), ints(&[7, 3])],
        ];
        for factors in cases {
            let f = product(&factors);
            let mut got = factor_squarefree_integer(&f);
            let mut want: Vec<Vec<BigInt>> = factors.iter().map(|g| primitive_part(g)).collect();
            got.sort();
            want.sort();
            assert_eq!(got, want, "factoring {f:?}");
        }
    }

    #[test]
    fn swinnerton_dyer_style_irreducible() {
        // t^4 - 10 t^2 + 1 splits modulo every prime but is irreducible over Z.
        let f = ints(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree_integer(&f), vec![f]);
    }
}
