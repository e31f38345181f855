//! Exact scalars and dense linear algebra.
//!
//! Everything downstream is generic over [`Scalar`]. Two fields are
//! provided: arbitrary-precision rationals ([`Q`]) and a prime field
//! ([`Fp`]) whose modulus is a process-wide session parameter.

mod matrix;
mod poly;
mod rng;

pub use matrix::{Matrix, SCREEN_PRIME};
pub use poly::{poly_rank, Poly, PolyBudget, PolyMatrix};
pub use rng::SeedStream;

use std::fmt::{Debug, Display};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Exact rationals, the default field.
pub type Q = BigRational;

/// An exact field element.
pub trait Scalar: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    /// Whether the field has characteristic zero.
    const CHAR_ZERO: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    /// `num / den`, or `None` when `den` vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;
    /// Over Q a uniform integer in `[-range, range]`; over F_p a uniform
    /// field element (zero when `range == 0`).
    fn sample<R: Rng + ?Sized>(rng: &mut R, range: u64) -> Self;
    /// Short tag naming the field, e.g. `"Q"` or `"F_7"`.
    fn field_tag() -> String;

    /// Residue modulo the prime `p` when the element is `p`-integral.
    /// Only characteristic-zero fields provide one.
    fn residue(&self, _p: u64) -> Option<u64> {
        None
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.plus(&a.times(b));
    }
}

impl Scalar for BigRational {
    const CHAR_ZERO: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R, range: u64) -> Self {
        if range == 0 {
            return Zero::zero();
        }
        let r = range.min(i64::MAX as u64) as i64;
        Self::from_i64(rng.random_range(-r..=r))
    }
    fn field_tag() -> String {
        "Q".to_string()
    }
    fn residue(&self, p: u64) -> Option<u64> {
        let modulus = BigInt::from(p);
        let reduce = |x: &BigInt| {
            let r = x % &modulus;
            let r = if r.is_negative() { r + &modulus } else { r };
            r.to_u64().expect("residue fits")
        };
        let den = reduce(self.denom());
        if den == 0 {
            return None;
        }
        Some(mul_mod(reduce(self.numer()), pow_mod(den, p - 2, p), p))
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if Zero::is_zero(a) || Zero::is_zero(b) {
            return;
        }
        *self += a * b;
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Largest 31-bit prime; the default modulus for [`Fp`].
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

static MODULUS: AtomicU64 = AtomicU64::new(DEFAULT_PRIME);

/// Sets the session modulus used by every [`Fp`] value.
///
/// Must be called before any `Fp` arithmetic; values created under a
/// previous modulus are meaningless afterwards. Returns an error message
/// if `p` is not a prime below 2^32.
pub fn set_prime(p: u64) -> Result<(), String> {
    if p >= 1 << 32 {
        return Err(format!("modulus {p} exceeds 2^32"));
    }
    if !is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    MODULUS.store(p, Ordering::SeqCst);
    Ok(())
}

/// The current session modulus.
pub fn prime() -> u64 {
    MODULUS.load(Ordering::Relaxed)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of the prime field F_p, p = [`prime()`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % prime())
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let p = prime();
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Fp {
    const CHAR_ZERO: bool = false;

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn plus(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % prime())
    }
    fn minus(&self, other: &Self) -> Self {
        let p = prime();
        Fp((self.0 + p - other.0) % p)
    }
    fn times(&self, other: &Self) -> Self {
        Fp(self.0 * other.0 % prime())
    }
    fn negated(&self) -> Self {
        let p = prime();
        Fp((p - self.0) % p)
    }
    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(prime() - 2))
        }
    }
    fn from_i64(v: i64) -> Self {
        let p = prime() as i128;
        Fp((v as i128).rem_euclid(p) as u64)
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let p = BigInt::from(prime());
        let reduce = |x: &BigInt| {
            let r = ((x % &p) + &p) % &p;
            Fp(r.to_u64().expect("residue fits in u64"))
        };
        let d = reduce(den);
        d.inverse().map(|di| reduce(num).times(&di))
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R, range: u64) -> Self {
        if range == 0 {
            return Fp(0);
        }
        Fp(rng.random_range(0..prime()))
    }
    fn field_tag() -> String {
        format!("F_{}", prime())
    }
}

/// Parses a rational literal such as `3`, `-2`, `1/2` or `-7/3`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Converts a rational into the field `F`.
pub fn from_rational<F: Scalar>(q: &BigRational) -> Option<F> {
    F::from_ratio(q.numer(), q.denom())
}

/// Formats a rational compactly (`3`, `-1/2`).
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else if q.is_negative() {
        format!("-{}/{}", -q.numer(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-1/2"), Some(Q::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("4/2"), Some(Q::from_i64(2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&parse_rational("-6/4").unwrap()), "-3/2");
    }

    #[test]
    fn fp_arithmetic() {
        let a = Fp::from_i64(-1);
        assert_eq!(a.value(), DEFAULT_PRIME - 1);
        let inv = Fp::from_i64(3).inverse().unwrap();
        assert!(inv.times(&Fp::from_i64(3)).is_one());
        let half = Fp::from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert!(half.plus(&half).is_one());
    }

    #[test]
    fn sample_range_zero() {
        let mut rng = SeedStream::new(42).rng();
        assert!(Scalar::is_zero(&Q::sample(&mut rng, 0)));
        let x = Q::sample(&mut rng, 5);
        assert!(x <= Q::from_i64(5) && x >= Q::from_i64(-5));
    }
}
