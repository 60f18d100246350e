//! Hilbert functions.
//!
//! For ideals the value in a degree is the number of standard monomials, read
//! off the reduced Groebner basis. For finite point sets in one projective
//! space the value is the rank of an evaluation matrix, which does not touch
//! Groebner bases at all.

use crate::field::Field;
use crate::ideal::Ideal;
use crate::linalg::rank;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::AlgebraError;

/// `C(n, k)` in `u128`, saturating on overflow.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

impl<F: Field> Ideal<F> {
    fn standard_count(&self, monomials: &[Monomial]) -> usize {
        let lms = self.leading_monomials();
        monomials
            .iter()
            .filter(|m| !lms.iter().any(|l| l.divides(m)))
            .count()
    }

    /// `dim_k (R/I)_d` for a multidegree `d`.
    pub fn hilbert_multi(&self, d: &[u32]) -> Result<usize, AlgebraError> {
        let ring = self.ring();
        if d.len() != ring.num_factors() {
            return Err(AlgebraError::DegreeArity {
                expected: ring.num_factors(),
                got: d.len(),
            });
        }
        if !self.is_multihomogeneous() {
            return Err(AlgebraError::NotMultihomogeneous);
        }
        Ok(self.standard_count(&ring.monomials_of_multidegree(d)))
    }

    /// `dim_k (R/I)_t` for the standard grading by total degree.
    pub fn hilbert_std(&self, t: u32) -> Result<usize, AlgebraError> {
        if !self.is_homogeneous() {
            return Err(AlgebraError::NotMultihomogeneous);
        }
        Ok(self.standard_count(&self.ring().monomials_of_degree(t)))
    }
}

fn check_points<F: Field>(points: &[Vec<F::Elem>]) -> Result<usize, AlgebraError> {
    let first = points.first().ok_or(AlgebraError::EmptyPointSet)?;
    let n = first.len();
    if n == 0 || points.iter().any(|p| p.len() != n) {
        return Err(AlgebraError::InvalidShape(points.iter().map(|p| p.len()).collect()));
    }
    Ok(n)
}

/// Value of the Hilbert function of a point set of `P^m` in degree `t`:
/// the rank of the matrix of degree-`t` monomials evaluated at the points.
pub fn points_hilbert<F: Field>(
    field: &F,
    points: &[Vec<F::Elem>],
    t: u32,
) -> Result<usize, AlgebraError> {
    let nvars = check_points::<F>(points)?;
    let monos = monomials_of_degree(nvars, t, 0);
    let rows = points
        .iter()
        .map(|p| {
            monos
                .iter()
                .map(|m| {
                    let mut v = field.one();
                    for (i, x) in p.iter().enumerate() {
                        for _ in 0..m.exp(i) {
                            v = field.mul(&v, x);
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();
    Ok(rank(field, rows))
}

/// Hilbert function values from degree 0 up to the first degree where it
/// reaches the number of points.
pub fn points_hilbert_until_stable<F: Field>(
    field: &F,
    points: &[Vec<F::Elem>],
) -> Result<Vec<usize>, AlgebraError> {
    check_points::<F>(points)?;
    let mut out = Vec::new();
    for t in 0.. {
        let h = points_hilbert(field, points, t)?;
        out.push(h);
        if h >= points.len() {
            break;
        }
    }
    Ok(out)
}

/// First difference of the Hilbert function, up to its last positive entry.
pub fn h_vector<F: Field>(field: &F, points: &[Vec<F::Elem>]) -> Result<Vec<usize>, AlgebraError> {
    let hf = points_hilbert_until_stable(field, points)?;
    let mut out = Vec::with_capacity(hf.len());
    let mut prev = 0;
    for h in hf {
        out.push(h - prev);
        prev = h;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

/// Whether `H(t) = min(C(t + m, m), #points)` for every `t`.
pub fn is_generic_hf<F: Field>(field: &F, points: &[Vec<F::Elem>]) -> Result<bool, AlgebraError> {
    let m = check_points::<F>(points)? as u64 - 1;
    let hf = points_hilbert_until_stable(field, points)?;
    Ok(hf.iter().enumerate().all(|(t, &h)| {
        let expected = binomial(t as u64 + m, m).min(points.len() as u128);
        h as u128 == expected
    }))
}

/// Least degree of a nonzero form vanishing on all the points.
pub fn initial_degree<F: Field>(field: &F, points: &[Vec<F::Elem>]) -> Result<u32, AlgebraError> {
    let m = check_points::<F>(points)? as u64 - 1;
    for t in 0u32.. {
        let h = points_hilbert(field, points, t)?;
        if (h as u128) < binomial(t as u64 + m, m) {
            return Ok(t);
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::ring::Ring;

    fn pts(f: &PrimeField, raw: &[&[i64]]) -> Vec<Vec<u32>> {
        raw.iter()
            .map(|p| p.iter().map(|&x| f.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert!(binomial(200, 100) > 0);
    }

    #[test]
    fn ring_hilbert_function_is_product_of_binomials() {
        let r = Ring::new(PrimeField::default(), &[1, 2]).unwrap();
        let zero = Ideal::zero(&r);
        assert_eq!(zero.hilbert_multi(&[1, 1]).unwrap(), 6);
        assert_eq!(zero.hilbert_multi(&[3, 2]).unwrap(), 4 * 6);
        assert!(zero.hilbert_multi(&[1]).is_err());
        assert_eq!(zero.hilbert_std(2).unwrap(), 15);
    }

    #[test]
    fn general_and_collinear_points() {
        let f = PrimeField::default();
        let general = pts(&f, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(h_vector(&f, &general).unwrap(), vec![1, 2]);
        assert!(is_generic_hf(&f, &general).unwrap());
        assert_eq!(initial_degree(&f, &general).unwrap(), 2);

        let collinear = pts(&f, &[&[1, 0, 0], &[1, 1, 0], &[1, 2, 0]]);
        assert_eq!(h_vector(&f, &collinear).unwrap(), vec![1, 1, 1]);
        assert!(!is_generic_hf(&f, &collinear).unwrap());
        assert_eq!(initial_degree(&f, &collinear).unwrap(), 1);

        let single = pts(&f, &[&[3, 1, 4]]);
        assert_eq!(h_vector(&f, &single).unwrap(), vec![1]);
        assert!(is_generic_hf(&f, &single).unwrap());
        assert!(h_vector(&f, &[]).is_err());
    }
}
