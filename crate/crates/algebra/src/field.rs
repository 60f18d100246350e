//! Coefficient fields.
//!
//! Two fields are provided: [`PrimeField`], the residues modulo a word-sized
//! prime, and [`Rationals`], exact arbitrary-precision fractions. Everything
//! else in the crate is generic over [`Field`], so the same computation can be
//! replayed over both to rule out bad-prime artifacts.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::AlgebraError;

/// Default prime modulus.
pub const DEFAULT_PRIME: u32 = 32003;

/// A field with explicitly passed context.
///
/// Elements do not carry their field; operations go through the field value,
/// which lets the modulus be chosen at runtime.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;

    /// A random element used for generic choices (linear forms, coordinates).
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Number of distinct values [`Field::random`] can return. Feeds the
    /// Schwartz-Zippel style failure bounds reported by randomized tests.
    fn sample_space(&self) -> u64;

    fn characteristic(&self) -> u64;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn name(&self) -> String;

    /// Coefficient rendering used when printing polynomials.
    fn fmt_coeff(&self, c: &Self::Elem) -> String {
        c.to_string()
    }
}

/// Integers modulo a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(AlgebraError::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(&self, a: u32) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }

    #[inline]
    fn one(&self) -> u32 {
        1
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }

    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        // extended Euclid
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i64) as u32
    }

    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.random_range(0..self.p)
    }

    fn sample_space(&self) -> u64 {
        self.p as u64
    }

    fn characteristic(&self) -> u64 {
        self.p as u64
    }

    fn name(&self) -> String {
        format!("GF({})", self.p)
    }

    fn fmt_coeff(&self, c: &u32) -> String {
        self.signed(*c).to_string()
    }
}

/// Exact rational numbers.
///
/// Random elements are integers drawn from `[-bound, bound]`, which keeps
/// coefficient growth in check while still giving generic choices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rationals {
    random_bound: i64,
}

impl Rationals {
    pub fn new(random_bound: i64) -> Self {
        assert!(random_bound >= 1);
        Rationals { random_bound }
    }
}

impl Default for Rationals {
    fn default() -> Self {
        Rationals { random_bound: 1000 }
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }

    fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a / b
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let v = rng.random_range(-self.random_bound..=self.random_bound);
        self.from_i64(v)
    }

    fn sample_space(&self) -> u64 {
        (2 * self.random_bound + 1) as u64
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn name(&self) -> String {
        "QQ".to_string()
    }

    fn fmt_coeff(&self, c: &BigRational) -> String {
        if c.denom().is_one() {
            c.numer().to_string()
        } else if c.is_negative() {
            format!("-{}/{}", c.numer().abs(), c.denom())
        } else {
            format!("{}/{}", c.numer(), c.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::default();
        for a in [1u32, 2, 3, 12345, 32002] {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(32004).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(65521).is_ok());
    }

    #[test]
    fn from_negative_integer() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.signed(6), -1);
    }

    #[test]
    fn rational_arithmetic() {
        let q = Rationals::default();
        let half = q.div(&q.one(), &q.from_i64(2));
        assert_eq!(q.add(&half, &half), q.one());
        assert_eq!(q.fmt_coeff(&q.neg(&half)), "-1/2");
    }
}
