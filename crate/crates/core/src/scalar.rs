//! Exact scalar fields.
//!
//! Everything in the crate is generic over [`Scalar`]. Two fields are provided:
//! arbitrary-precision rationals ([`BigRational`]) and prime fields with a modulus chosen
//! at runtime ([`Fp`]).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor;
use crate::poly::Poly;

/// The base field an algebra is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl FieldKind {
    pub fn characteristic(self) -> u64 {
        match self {
            FieldKind::Rational => 0,
            FieldKind::Prime(p) => p,
        }
    }

    /// Parses `"Q"` or `"Fp:<p>"`; `p` must be prime.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "Q" {
            return Ok(FieldKind::Rational);
        }
        let bad = || {
            Error::Format(format!(
                "unknown field {text:?} (expected \"Q\" or \"Fp:<p>\")"
            ))
        };
        let digits = text.strip_prefix("Fp:").ok_or_else(bad)?;
        let p: u64 = digits.trim().parse().map_err(|_| bad())?;
        if !is_prime(p) {
            return Err(Error::Format(format!("modulus {p} is not prime")));
        }
        Ok(FieldKind::Prime(p))
    }

    /// Rejects prime fields whose characteristic does not exceed `dim`.
    ///
    /// The trace-form radical and the idempotent splitting both need char 0 or char > dim.
    pub fn require_large_characteristic(self, dim: usize) -> Result<()> {
        match self {
            FieldKind::Prime(p) if (p as u128) <= dim as u128 => Err(Error::FieldUnsupported {
                field: self,
                reason: format!("characteristic {p} must exceed the dimension {dim}"),
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// An exact field element.
///
/// `Zero::zero()` and `One::one()` must be usable without knowing the field; field-specific
/// integers are made with [`Scalar::from_i64_in`].
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + Eq
    + Ord
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether this scalar type represents elements of `field`.
    fn supports(field: FieldKind) -> bool;

    fn from_i64_in(n: i64, field: FieldKind) -> Self;

    /// Binds a field-independent constant (such as `Zero::zero()`) to `field`.
    fn attach(self, _field: FieldKind) -> Self {
        self
    }

    /// Parses an integer or a `"p/q"` fraction.
    fn parse_in(text: &str, field: FieldKind) -> Result<Self>;

    /// Sign for ordered fields, `None` for finite fields.
    fn sign(&self) -> Option<Ordering>;

    /// Monic irreducible factors of a monic squarefree polynomial.
    fn factor_squarefree(poly: &Poly<Self>, field: FieldKind) -> Vec<Poly<Self>>;

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

impl Scalar for BigRational {
    fn supports(field: FieldKind) -> bool {
        field == FieldKind::Rational
    }

    fn from_i64_in(n: i64, _field: FieldKind) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse_in(text: &str, field: FieldKind) -> Result<Self> {
        let err = || Error::ScalarParse {
            text: text.to_string(),
            field,
        };
        if field != FieldKind::Rational {
            return Err(err());
        }
        let (num, den) = split_fraction(text).ok_or_else(err)?;
        if den.is_zero() {
            return Err(err());
        }
        Ok(BigRational::new(num, den))
    }

    fn sign(&self) -> Option<Ordering> {
        Some(if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        })
    }

    fn factor_squarefree(poly: &Poly<Self>, _field: FieldKind) -> Vec<Poly<Self>> {
        if poly.degree().unwrap_or(0) <= 1 {
            return vec![poly.monic()];
        }
        // Clear denominators, factor over Z, and return to monic rational factors.
        let denominators = poly
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let integral: Vec<BigInt> = poly
            .coeffs()
            .iter()
            .map(|c| (c * BigRational::from_integer(denominators.clone())).to_integer())
            .collect();
        factor::factor_squarefree_integer(&integral)
            .into_iter()
            .map(|f| {
                Poly::new(
                    f.into_iter()
                        .map(BigRational::from_integer)
                        .collect::<Vec<_>>(),
                )
                .monic()
            })
            .collect()
    }
}

fn split_fraction(text: &str) -> Option<(BigInt, BigInt)> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => Some((
            BigInt::from_str(n.trim()).ok()?,
            BigInt::from_str(d.trim()).ok()?,
        )),
        None => Some((BigInt::from_str(text).ok()?, BigInt::one())),
    }
}

/// Element of a prime field `Z/pZ` whose modulus is fixed at runtime.
///
/// Values produced by `Zero`/`One` (and arithmetic among them) carry no modulus yet; they
/// adopt the modulus of the first residue they are combined with.
#[derive(Clone, Copy, Debug)]
pub struct Fp(FpRepr);

#[derive(Clone, Copy, Debug)]
enum FpRepr {
    Unattached(i64),
    Residue { value: u64, modulus: u64 },
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        Fp(FpRepr::Residue {
            value: reduce_i64(value, modulus),
            modulus,
        })
    }

    /// Canonical representative in `0..p`, or the raw integer for an unattached constant.
    pub fn residue(&self) -> i128 {
        match self.0 {
            FpRepr::Unattached(v) => v as i128,
            FpRepr::Residue { value, .. } => value as i128,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            FpRepr::Unattached(_) => None,
            FpRepr::Residue { modulus, .. } => Some(modulus),
        }
    }

    fn shared_modulus(&self, other: &Fp) -> Option<u64> {
        match (self.modulus(), other.modulus()) {
            (Some(p), Some(q)) => {
                assert_eq!(p, q, "mixing residues of different prime fields");
                Some(p)
            }
            (Some(p), None) | (None, Some(p)) => Some(p),
            (None, None) => None,
        }
    }

    fn value_mod(&self, p: u64) -> u64 {
        match self.0 {
            FpRepr::Unattached(v) => reduce_i64(v, p),
            FpRepr::Residue { value, .. } => value,
        }
    }

    fn unattached(&self) -> i64 {
        match self.0 {
            FpRepr::Unattached(v) => v,
            FpRepr::Residue { .. } => unreachable!("residue has a modulus"),
        }
    }
}

fn reduce_i64(v: i64, p: u64) -> u64 {
    (v as i128).rem_euclid(p as i128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match self.shared_modulus(other) {
            Some(p) => self.value_mod(p) == other.value_mod(p),
            None => self.unattached() == other.unattached(),
        }
    }
}

impl Eq for Fp {}

impl PartialOrd for Fp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fp {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.shared_modulus(other) {
            Some(p) => self.value_mod(p).cmp(&other.value_mod(p)),
            None => self.unattached().cmp(&other.unattached()),
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue())
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        match self.shared_modulus(&rhs) {
            Some(p) => {
                let sum = (self.value_mod(p) as u128 + rhs.value_mod(p) as u128) % p as u128;
                Fp(FpRepr::Residue {
                    value: sum as u64,
                    modulus: p,
                })
            }
            None => Fp(FpRepr::Unattached(
                self.unattached()
                    .checked_add(rhs.unattached())
                    .expect("unattached constant overflow"),
            )),
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        match self.0 {
            FpRepr::Unattached(v) => Fp(FpRepr::Unattached(-v)),
            FpRepr::Residue { value, modulus } => Fp(FpRepr::Residue {
                value: (modulus - value) % modulus,
                modulus,
            }),
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        match self.shared_modulus(&rhs) {
            Some(p) => Fp(FpRepr::Residue {
                value: mul_mod(self.value_mod(p), rhs.value_mod(p), p),
                modulus: p,
            }),
            None => Fp(FpRepr::Unattached(
                self.unattached()
                    .checked_mul(rhs.unattached())
                    .expect("unattached constant overflow"),
            )),
        }
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        match self.shared_modulus(&rhs) {
            Some(p) => {
                let d = rhs.value_mod(p);
                assert!(d != 0, "division by zero in Fp:{p}");
                Fp(FpRepr::Residue {
                    value: mul_mod(self.value_mod(p), pow_mod(d, p - 2, p), p),
                    modulus: p,
                })
            }
            None => {
                let (n, d) = (self.unattached(), rhs.unattached());
                assert!(d != 0, "division by zero");
                assert!(
                    n % d == 0,
                    "cannot divide constants {n}/{d} without a modulus"
                );
                Fp(FpRepr::Unattached(n / d))
            }
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp(FpRepr::Unattached(0))
    }
    fn is_zero(&self) -> bool {
        match self.0 {
            FpRepr::Unattached(v) => v == 0,
            FpRepr::Residue { value, .. } => value == 0,
        }
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(FpRepr::Unattached(1))
    }
}

impl Scalar for Fp {
    fn supports(field: FieldKind) -> bool {
        matches!(field, FieldKind::Prime(_))
    }

    fn from_i64_in(n: i64, field: FieldKind) -> Self {
        match field {
            FieldKind::Prime(p) => Fp::new(n, p),
            FieldKind::Rational => panic!("Fp cannot represent elements of Q"),
        }
    }

    fn attach(self, field: FieldKind) -> Self {
        match (&self.0, field) {
            (FpRepr::Unattached(v), FieldKind::Prime(p)) => Fp::new(*v, p),
            _ => self,
        }
    }

    fn parse_in(text: &str, field: FieldKind) -> Result<Self> {
        let err = || Error::ScalarParse {
            text: text.to_string(),
            field,
        };
        let FieldKind::Prime(p) = field else {
            return Err(err());
        };
        let (num, den) = split_fraction(text).ok_or_else(err)?;
        let modulus = BigInt::from(p);
        let reduce = |v: &BigInt| {
            v.mod_floor(&modulus)
                .to_u64()
                .expect("reduced residue fits")
        };
        let (num, den) = (reduce(&num), reduce(&den));
        if den == 0 {
            return Err(err());
        }
        Ok(Fp(FpRepr::Residue {
            value: mul_mod(num, pow_mod(den, p - 2, p), p),
            modulus: p,
        }))
    }

    fn sign(&self) -> Option<Ordering> {
        None
    }

    fn factor_squarefree(poly: &Poly<Self>, field: FieldKind) -> Vec<Poly<Self>> {
        let FieldKind::Prime(p) = field else {
            panic!("Fp polynomial over a non-prime field");
        };
        let residues: Vec<u64> = poly.coeffs().iter().map(|c| c.value_mod(p)).collect();
        factor::factor_squarefree_mod_p(&residues, p)
            .into_iter()
            .map(|f| {
                Poly::new(
                    f.into_iter()
                        .map(|v| Fp::new(v as i64, p))
                        .collect::<Vec<_>>(),
                )
            })
            .collect()
    }
}
