//! Dense exponent vectors.

use std::fmt;

/// Hard cap on the number of ring variables (ambient plus auxiliary).
pub const MAX_VARS: usize = 16;

/// A monomial as a fixed-width exponent vector.
///
/// `mask` has bit `i` set iff variable `i` occurs; it makes most failed
/// divisibility tests a single AND.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
    mask: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
            mask: 0,
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = e;
            m.deg += e as u32;
            if e > 0 {
                m.mask |= 1 << i;
            }
        }
        m
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u16) -> Self {
        assert!(i < MAX_VARS);
        let mut m = Monomial::one();
        m.exps[i] = e;
        m.deg = e as u32;
        if e > 0 {
            m.mask = 1 << i;
        }
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e += *o;
        }
        Monomial {
            exps,
            deg: self.deg + other.deg,
            mask: self.mask | other.mask,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.mask & !other.mask != 0 || self.deg > other.deg {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut exps = other.exps;
        let mut mask = 0;
        for (i, (e, s)) in exps.iter_mut().zip(self.exps.iter()).enumerate() {
            *e -= *s;
            if *e > 0 {
                mask |= 1 << i;
            }
        }
        Monomial {
            exps,
            deg: other.deg - self.deg,
            mask,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        let mut deg = 0;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = (*e).max(*o);
            deg += *e as u32;
        }
        Monomial {
            exps,
            deg,
            mask: self.mask | other.mask,
        }
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.mask & other.mask == 0
    }

    /// Sum of the exponents in the index range.
    pub fn degree_in(&self, vars: std::ops::Range<usize>) -> u32 {
        self.exps[vars].iter().map(|&e| e as u32).sum()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = (0..MAX_VARS).rev().find(|&i| self.exps[i] > 0).unwrap_or(0);
        write!(f, "{:?}", &self.exps[..=last])
    }
}

/// All exponent vectors of total degree `deg` in `nvars` variables, written
/// into the index range `offset..offset + nvars` of a monomial.
pub fn monomials_of_degree(nvars: usize, deg: u32, offset: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; offset + nvars];
    fill(&mut out, &mut exps, offset, offset + nvars, deg);
    out
}

fn fill(out: &mut Vec<Monomial>, exps: &mut [u16], pos: usize, end: usize, rem: u32) {
    if pos + 1 == end {
        exps[pos] = rem as u16;
        out.push(Monomial::from_exponents(exps));
        exps[pos] = 0;
        return;
    }
    if pos == end {
        if rem == 0 {
            out.push(Monomial::from_exponents(exps));
        }
        return;
    }
    for e in (0..=rem).rev() {
        exps[pos] = e as u16;
        fill(out, exps, pos + 1, end, rem - e);
    }
    exps[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_quotient() {
        let a = Monomial::from_exponents(&[1, 0, 2]);
        let b = Monomial::from_exponents(&[2, 1, 2]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Monomial::from_exponents(&[1, 1, 0]));
        assert_eq!(a.mul(&a.quotient_of(&b)), b);
    }

    #[test]
    fn lcm_and_coprime() {
        let a = Monomial::from_exponents(&[1, 0, 2]);
        let b = Monomial::from_exponents(&[0, 3, 1]);
        assert_eq!(a.lcm(&b), Monomial::from_exponents(&[1, 3, 2]));
        assert!(!a.is_coprime(&b));
        assert!(Monomial::var(0).is_coprime(&Monomial::var(1)));
    }

    #[test]
    fn monomial_counts() {
        // C(d + n - 1, n - 1)
        assert_eq!(monomials_of_degree(3, 2, 0).len(), 6);
        assert_eq!(monomials_of_degree(2, 5, 0).len(), 6);
        assert_eq!(monomials_of_degree(1, 4, 0).len(), 1);
        let shifted = monomials_of_degree(2, 1, 3);
        assert_eq!(shifted[0], Monomial::var(3));
        assert_eq!(shifted[1], Monomial::var(4));
    }
}
