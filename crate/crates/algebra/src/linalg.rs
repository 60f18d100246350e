//! Dense and sparse linear algebra over a [`Field`].

use std::collections::HashMap;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::ring::{Poly, Ring};

/// Rank of a dense matrix given by rows.
pub fn rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let k = row[c].clone();
            for (x, y) in row.iter_mut().zip(pivot.iter()) {
                *x = field.sub(x, &field.mul(&k, y));
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = m.len();
    let mut aug: Vec<Vec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !field.is_zero(&aug[i][c]))?;
        aug.swap(c, p);
        let inv = field.inv(&aug[c][c]);
        for x in aug[c].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot = aug[c].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == c || field.is_zero(&row[c]) {
                continue;
            }
            let k = row[c].clone();
            for (x, y) in row.iter_mut().zip(pivot.iter()) {
                *x = field.sub(x, &field.mul(&k, y));
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec<F: Field>(field: &F, m: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
        })
        .collect()
}

/// A subspace of polynomials kept in echelon form by leading monomial.
///
/// Polynomials are treated as sparse coefficient vectors indexed by
/// monomials.
pub struct PolySpan<'r, F: Field> {
    ring: &'r Ring<F>,
    rows: HashMap<Monomial, Poly<F::Elem>>,
}

impl<'r, F: Field> PolySpan<'r, F> {
    pub fn new(ring: &'r Ring<F>) -> Self {
        PolySpan {
            ring,
            rows: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `p` after eliminating pivots; zero iff `p` lies in the span.
    pub fn reduce(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut p = p.clone();
        let mut kept: Vec<(Monomial, F::Elem)> = Vec::new();
        loop {
            let Some((m, c)) = p.terms().first().cloned() else {
                break;
            };
            match self.rows.get(&m) {
                Some(row) => {
                    let scaled = self.ring.scale(row, &c);
                    p = self.ring.sub(&p, &scaled);
                }
                None => {
                    kept.push((m, c));
                    p = self.ring.from_terms(p.terms()[1..].to_vec());
                }
            }
        }
        self.ring.from_terms(kept)
    }

    pub fn contains(&self, p: &Poly<F::Elem>) -> bool {
        self.leading_remainder(p).is_zero()
    }

    /// Reduces only until the leading monomial is not a pivot.
    fn leading_remainder(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut p = p.clone();
        while let Some((m, c)) = p.terms().first().cloned() {
            match self.rows.get(&m) {
                Some(row) => {
                    let scaled = self.ring.scale(row, &c);
                    p = self.ring.sub(&p, &scaled);
                }
                None => break,
            }
        }
        p
    }

    /// Adds `p`; returns false when it was already in the span.
    pub fn insert(&mut self, p: &Poly<F::Elem>) -> bool {
        let r = self.leading_remainder(p);
        if r.is_zero() {
            return false;
        }
        let r = self.ring.monic(&r);
        let lm = *r.leading_monomial().expect("nonzero");
        self.rows.insert(lm, r);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn rank_of_small_matrices() {
        let f = PrimeField::default();
        let e = |v: i64| f.from_i64(v);
        let m = vec![vec![e(1), e(2)], vec![e(2), e(4)]];
        assert_eq!(rank(&f, m), 1);
        let m = vec![vec![e(1), e(0), e(1)], vec![e(0), e(1), e(1)], vec![e(1), e(1), e(0)]];
        assert_eq!(rank(&f, m), 3);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::default();
        let e = |v: i64| f.from_i64(v);
        let m = vec![vec![e(2), e(1)], vec![e(5), e(3)]];
        let inv = inverse(&f, &m).unwrap();
        let v = vec![e(7), e(-4)];
        assert_eq!(mat_vec(&f, &m, &mat_vec(&f, &inv, &v)), v);
        assert!(inverse(&f, &[vec![e(1), e(2)], vec![e(2), e(4)]]).is_none());
    }

    #[test]
    fn span_membership() {
        let r = Ring::new(PrimeField::default(), &[2]).unwrap();
        let mut s = PolySpan::new(&r);
        let a = r.add(&r.var(0), &r.var(1));
        let b = r.sub(&r.var(1), &r.var(2));
        assert!(s.insert(&a));
        assert!(s.insert(&b));
        assert!(!s.insert(&r.add(&a, &b)));
        assert!(s.contains(&r.sub(&a, &b)));
        assert!(!s.contains(&r.var(0)));
        assert_eq!(s.dim(), 2);
    }
}
