//! Coefficient rings: the rationals, prime fields of characteristic at least 5,
//! and (in [`super::dual`]) dual numbers over either.
//!
//! Rings are runtime values rather than marker types because the modulus of a
//! prime field is only known once an input document has been read. Every
//! matrix carries its ring, so elements of different fields are never mixed.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use super::LinalgError;
use super::Matrix;

/// A commutative ring with enough structure for elimination.
///
/// `unit_inverse` returns `None` for non-units. In a field that means zero;
/// in the dual ring it also covers the nilpotents `bε`.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// A field in which exact ranks, determinants and kernels can be computed.
pub trait Field: Ring {
    /// Maps a rational number into the field. Fails in 𝔽_p when p divides
    /// the denominator.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, LinalgError>;

    /// Canonical text form: `num/den` (or an integer) over ℚ, the residue in
    /// `0..p` over 𝔽_p.
    fn format(&self, a: &Self::Elem) -> String;

    fn spec(&self) -> FieldSpec;

    /// A random element: uniform over 𝔽_p, a small integer in `[-20, 20]`
    /// over ℚ (small entries keep exact elimination cheap).
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// Number of distinct values [`Field::sample`] can return.
    fn sample_size(&self) -> u64;

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.unit_inverse(a)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Rank of `m`. The default is plain Gaussian elimination.
    fn rank_of(&self, m: &Matrix<Self>) -> usize {
        super::elim::gaussian_rank(m)
    }

    fn determinant_of(&self, m: &Matrix<Self>) -> Self::Elem {
        super::elim::gaussian_determinant(m)
    }
}

/// The field of rational numbers with arbitrary-precision entries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

impl Field for Rationals {
    fn from_rational(&self, q: &BigRational) -> Result<BigRational, LinalgError> {
        Ok(q.clone())
    }

    fn format(&self, a: &BigRational) -> String {
        format_rational(a)
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }

    fn sample(&self, rng: &mut dyn RngCore) -> BigRational {
        BigRational::from_integer(rng.gen_range(-20i64..=20).into())
    }

    fn sample_size(&self) -> u64 {
        41
    }

    fn rank_of(&self, m: &Matrix<Self>) -> usize {
        super::bareiss::rational_rank(m)
    }

    fn determinant_of(&self, m: &Matrix<Self>) -> BigRational {
        super::bareiss::rational_determinant(m)
    }
}

/// The prime field 𝔽_p. Only primes p ≥ 5 are accepted, and p < 2^62 so
/// that products fit in a `u128`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if !(5..1 << 62).contains(&p) || !is_prime(p) {
            return Err(LinalgError::BadModulus(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits in u64")
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base, self.p);
            }
            base = mulmod(base, base, self.p);
            exp >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
}

impl Field for PrimeField {
    fn from_rational(&self, q: &BigRational) -> Result<u64, LinalgError> {
        let den = self.reduce_bigint(q.denom());
        let inv = self
            .unit_inverse(&den)
            .ok_or_else(|| LinalgError::DenominatorVanishes {
                value: format_rational(q),
                modulus: self.p,
            })?;
        Ok(self.mul(&self.reduce_bigint(q.numer()), &inv))
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn sample_size(&self) -> u64 {
        self.p
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Deterministic Miller–Rabin for 64-bit integers.
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
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b, n);
            }
            b = mulmod(b, b, n);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Formats a rational as `n` or `n/d` in lowest terms.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `n`, `-n`, or `n/d` (whitespace tolerated around the slash).
pub fn parse_rational(text: &str) -> Result<BigRational, LinalgError> {
    let bad = || LinalgError::BadRational(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Serializable description of a coefficient field: `"Q"` or `"fp:<prime>"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(FieldSpec::Rational);
        }
        let p = s
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| LinalgError::BadFieldSpec(s.to_string()))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = LinalgError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}
