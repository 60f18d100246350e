//! Gröbner-free reference computations used as independent oracles.

#![allow(dead_code)]

use std::collections::HashMap;

use mpacm::algebra::linalg::rank;
use mpacm::algebra::{Field, Monomial, PrimeField, Ring};
use mpacm::{Configuration, IntConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn field() -> PrimeField {
    PrimeField::default()
}

pub fn realize(ic: &IntConfig) -> Configuration<PrimeField> {
    ic.realize(&field()).unwrap()
}

pub fn config(dims: &[usize], pts: &[&[&[i64]]]) -> Configuration<PrimeField> {
    let pts: Vec<Vec<Vec<i64>>> = pts
        .iter()
        .map(|p| p.iter().map(|c| c.to_vec()).collect())
        .collect();
    Configuration::from_integers(&field(), dims, &pts).unwrap()
}

/// Basis of `{v : rows . v = 0}` by row reduction.
pub fn kernel(f: &PrimeField, mut rows: Vec<Vec<u32>>, ncols: usize) -> Vec<Vec<u32>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]);
        rows[r] = rows[r].iter().map(|v| f.mul(v, &inv)).collect();
        for i in 0..rows.len() {
            if i != r && !f.is_zero(&rows[i][c]) {
                let k = rows[i][c];
                let pivot_row = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(&pivot_row) {
                    *a = f.sub(a, &f.mul(&k, b));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![f.zero(); ncols];
            v[free] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&rows[i][free]);
            }
            v
        })
        .collect()
}

/// Length of `R/(I_X + (l_1, ..., l_n))` for `n` random linear forms, where
/// `(I_X)_t` is obtained by interpolation in every multidegree of total
/// degree `t`. Equals `#X` exactly when `X` is ACM (for general forms).
/// Returns `None` if the quotient is not Artinian by degree 40.
pub fn reduction_length(x: &Configuration<PrimeField>, seed: u64) -> Option<usize> {
    let f = field();
    let ring = Ring::new(f, x.dims()).unwrap();
    let nv = ring.num_ambient_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms: Vec<Vec<u32>> = (0..x.num_factors())
        .map(|_| (0..nv).map(|_| f.random(&mut rng)).collect())
        .collect();
    let coords: Vec<Vec<u32>> = x.points().iter().map(|p| p.flat_coords()).collect();
    let mut total = 0;
    for t in 0..40u32 {
        let basis: Vec<Monomial> = ring.monomials_of_degree(t);
        let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut span: Vec<Vec<u32>> = Vec::new();
        let mut by_degree: HashMap<Vec<u32>, Vec<Monomial>> = HashMap::new();
        for m in &basis {
            by_degree.entry(ring.multidegree_of(m)).or_default().push(*m);
        }
        for monos in by_degree.values() {
            let conditions: Vec<Vec<u32>> = coords
                .iter()
                .map(|p| monos.iter().map(|m| ring.evaluate(&ring.monomial(*m), p)).collect())
                .collect();
            for v in kernel(&f, conditions, monos.len()) {
                let mut row = vec![f.zero(); basis.len()];
                for (m, c) in monos.iter().zip(v) {
                    row[index[m]] = c;
                }
                span.push(row);
            }
        }
        if t > 0 {
            for l in &forms {
                for m in ring.monomials_of_degree(t - 1) {
                    let mut row = vec![f.zero(); basis.len()];
                    for (v, c) in l.iter().enumerate() {
                        let k = index[&m.mul(&Monomial::var(v))];
                        row[k] = f.add(&row[k], c);
                    }
                    span.push(row);
                }
            }
        }
        let h = basis.len() - rank(&f, span);
        if h == 0 {
            return Some(total);
        }
        total += h;
    }
    None
}

/// `C(m, k)` with the convention that it vanishes for `m < k`, including
/// negative `m`.
pub fn binom(m: i64, k: i64) -> i64 {
    if m < k || m < 0 {
        return 0;
    }
    (0..k).fold(1i64, |acc, j| acc * (m - j) / (j + 1))
}

/// Membership in the admissible set by scanning every `i` in a window that
/// covers all nonempty intervals up to `n1`.
pub fn admissible_brute(n0: i64, n1: i64, n: i64) -> bool {
    (-(n0 + n + 2)..=(n1 + n + 2)).any(|i| binom(n0 + i, n) <= n1 && n1 <= binom(n0 + i + 1, n) - n0)
}
