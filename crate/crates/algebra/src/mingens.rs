//! Minimal generators of multihomogeneous ideals by degree-wise linear
//! algebra.
//!
//! In a multidegree `d` the ideal's component `I_d` has basis
//! `{m - NF(m) : m a leading-term multiple of degree d}`. Generators needed in
//! degree `d` are the elements of `I_d` outside the span of products of
//! earlier generators with monomials.

use std::collections::BTreeSet;

use crate::field::Field;
use crate::ideal::Ideal;
use crate::linalg::PolySpan;
use crate::ring::{Poly, Ring};
use crate::AlgebraError;

/// A minimal multihomogeneous generating set.
#[derive(Clone, Debug)]
pub struct MinimalGenerators<E> {
    /// `(multidegree, count)` in processing order, counts nonzero.
    pub counts: Vec<(Vec<u32>, usize)>,
    /// Representatives with their multidegrees.
    pub generators: Vec<(Vec<u32>, Poly<E>)>,
}

impl<E> MinimalGenerators<E> {
    pub fn total(&self) -> usize {
        self.generators.len()
    }

    /// Number of generators of the given total degree.
    pub fn count_in_total_degree(&self, t: u32) -> usize {
        self.counts
            .iter()
            .filter(|(d, _)| d.iter().sum::<u32>() == t)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn count_in(&self, d: &[u32]) -> usize {
        self.counts
            .iter()
            .find(|(e, _)| e.as_slice() == d)
            .map_or(0, |(_, c)| *c)
    }
}

fn le(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn sub(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn degree_order(a: &Vec<u32>, b: &Vec<u32>) -> std::cmp::Ordering {
    let (sa, sb): (u32, u32) = (a.iter().sum(), b.iter().sum());
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

/// Span of `{g * m}` over chosen generators `g` with `deg g <= d`.
fn lower_span<'r, F: Field>(
    ring: &'r Ring<F>,
    chosen: &[(Vec<u32>, Poly<F::Elem>)],
    d: &[u32],
) -> PolySpan<'r, F> {
    let mut span = PolySpan::new(ring);
    let one = ring.field().one();
    for (e, g) in chosen {
        if !le(e, d) {
            continue;
        }
        for m in ring.monomials_of_multidegree(&sub(d, e)) {
            span.insert(&ring.mul_term(g, &m, &one));
        }
    }
    span
}

/// Basis of `I_d` read off the reduced Groebner basis.
fn component_basis<F: Field>(ideal: &Ideal<F>, d: &[u32]) -> Vec<Poly<F::Elem>> {
    let ring = ideal.ring();
    let lms = ideal.leading_monomials();
    ring.monomials_of_multidegree(d)
        .into_iter()
        .filter(|m| lms.iter().any(|l| l.divides(m)))
        .map(|m| {
            let mono = ring.monomial(m);
            ring.sub(&mono, &ideal.normal_form(&mono))
        })
        .collect()
}

fn basis_degrees<F: Field>(ideal: &Ideal<F>) -> Result<Vec<Vec<u32>>, AlgebraError> {
    let ring = ideal.ring();
    let mut set = BTreeSet::new();
    for g in ideal.groebner() {
        set.insert(ring.multidegree(g).ok_or(AlgebraError::NotMultihomogeneous)?);
    }
    let mut v: Vec<Vec<u32>> = set.into_iter().collect();
    v.sort_by(degree_order);
    Ok(v)
}

impl<F: Field> Ideal<F> {
    /// A minimal generating set, degree by degree in increasing total degree.
    pub fn minimal_generators(&self) -> Result<MinimalGenerators<F::Elem>, AlgebraError> {
        if !self.is_multihomogeneous() {
            return Err(AlgebraError::NotMultihomogeneous);
        }
        let ring = self.ring();
        let mut chosen: Vec<(Vec<u32>, Poly<F::Elem>)> = Vec::new();
        let mut counts = Vec::new();
        for d in basis_degrees(self)? {
            let mut span = lower_span(ring, &chosen, &d);
            let mut count = 0;
            for p in component_basis(self, &d) {
                if span.insert(&p) {
                    chosen.push((d.clone(), ring.monic(&p)));
                    count += 1;
                }
            }
            if count > 0 {
                counts.push((d, count));
            }
        }
        Ok(MinimalGenerators {
            counts,
            generators: chosen,
        })
    }

    /// Picks a minimal generating set of the ideal out of `candidates`, all
    /// of which must be multihomogeneous members. `None` when the candidates
    /// do not generate the ideal.
    pub fn minimal_subset_of(
        &self,
        candidates: &[Poly<F::Elem>],
    ) -> Result<Option<MinimalGenerators<F::Elem>>, AlgebraError> {
        let ring = self.ring();
        let mut tagged = Vec::with_capacity(candidates.len());
        for c in candidates.iter().filter(|c| !c.is_zero()) {
            let d = ring.multidegree(c).ok_or(AlgebraError::NotMultihomogeneous)?;
            tagged.push((d, c.clone()));
        }
        let mut degrees: BTreeSet<Vec<u32>> = tagged.iter().map(|(d, _)| d.clone()).collect();
        degrees.extend(basis_degrees(self)?);
        let mut degrees: Vec<Vec<u32>> = degrees.into_iter().collect();
        degrees.sort_by(degree_order);

        let mut chosen: Vec<(Vec<u32>, Poly<F::Elem>)> = Vec::new();
        let mut counts = Vec::new();
        for d in degrees {
            let mut span = lower_span(ring, &chosen, &d);
            let mut count = 0;
            for (_, c) in tagged.iter().filter(|(e, _)| *e == d) {
                if span.insert(c) {
                    chosen.push((d.clone(), c.clone()));
                    count += 1;
                }
            }
            let target = ring.monomials_of_multidegree(&d).len() - self.hilbert_multi(&d)?;
            if span.dim() < target {
                return Ok(None);
            }
            if count > 0 {
                counts.push((d, count));
            }
        }
        Ok(Some(MinimalGenerators {
            counts,
            generators: chosen,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn principal_ideal_has_one_generator() {
        let r = Ring::new(PrimeField::default(), &[1, 1]).unwrap();
        let f = r.add(&r.mul(&r.var(0), &r.var(2)), &r.mul(&r.var(1), &r.var(3)));
        let mg = Ideal::new(&r, vec![f]).minimal_generators().unwrap();
        assert_eq!(mg.total(), 1);
        assert_eq!(mg.counts, vec![(vec![1, 1], 1)]);
    }

    #[test]
    fn coordinate_point_in_p1_p2() {
        let r = Ring::new(PrimeField::default(), &[1, 2]).unwrap();
        let i = Ideal::new(&r, vec![r.var(1), r.var(3), r.var(4)]);
        let mg = i.minimal_generators().unwrap();
        assert_eq!(mg.count_in(&[1, 0]), 1);
        assert_eq!(mg.count_in(&[0, 1]), 2);
        assert_eq!(mg.total(), 3);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let r = Ring::new(PrimeField::default(), &[2]).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let i = Ideal::new(&r, vec![x.clone(), y.clone(), r.mul(&x, &y), r.add(&x, &y)]);
        let mg = i.minimal_generators().unwrap();
        assert_eq!(mg.total(), 2);
        let sub = i
            .minimal_subset_of(&[r.mul(&x, &y), r.add(&x, &y), x.clone(), y.clone()])
            .unwrap()
            .unwrap();
        assert_eq!(sub.total(), 2);
        assert!(i.minimal_subset_of(&[x]).unwrap().is_none());
    }
}
