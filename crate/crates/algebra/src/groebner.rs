//! Buchberger's algorithm.
//!
//! Pairs are selected by sugar degree, and pruned with the Gebauer-Moeller
//! installation of the product (coprime leading terms) and chain criteria.
//! The result is always the reduced basis: monic, minimal, tail-reduced and
//! sorted by increasing leading monomial, so two ideals are equal iff their
//! bases compare equal.

use std::cmp::Ordering;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::ring::{Poly, Ring};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Basis<E> {
    polys: Vec<Poly<E>>,
    lms: Vec<Monomial>,
    sugar: Vec<u32>,
    active: Vec<bool>,
}

impl<E> Basis<E> {
    fn active_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.polys.len()).filter(|&i| self.active[i])
    }
}

impl<F: Field> Ring<F> {
    /// Remainder of `f` on division by `basis`; no term of the result is
    /// divisible by a leading monomial of the basis.
    pub fn normal_form(&self, f: &Poly<F::Elem>, basis: &[Poly<F::Elem>]) -> Poly<F::Elem> {
        let refs: Vec<&Poly<F::Elem>> = basis.iter().filter(|g| !g.is_zero()).collect();
        self.reduce_by(f, &refs)
    }

    fn reduce_by(&self, f: &Poly<F::Elem>, basis: &[&Poly<F::Elem>]) -> Poly<F::Elem> {
        let field = self.field();
        let lms: Vec<(Monomial, F::Elem)> = basis
            .iter()
            .map(|g| {
                let (m, c) = &g.terms()[0];
                (*m, field.inv(c))
            })
            .collect();
        let mut p = f.terms().to_vec();
        let mut start = 0;
        let mut rem = Vec::new();
        while start < p.len() {
            let (m, c) = &p[start];
            match lms.iter().position(|(lm, _)| lm.divides(m)) {
                Some(k) => {
                    let q = lms[k].0.quotient_of(m);
                    let coef = field.mul(c, &lms[k].1);
                    p = self.sub_scaled(&p[start..], &coef, &q, basis[k].terms());
                    start = 0;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        self.from_sorted(rem)
    }

    fn spoly(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>, lcm: &Monomial) -> Poly<F::Elem> {
        let one = self.field().one();
        let ma = a.terms()[0].0.quotient_of(lcm);
        let mb = b.terms()[0].0.quotient_of(lcm);
        let left = self.mul_term(a, &ma, &one);
        let terms = self.sub_scaled(left.terms(), &one, &mb, b.terms());
        // leading terms cancel exactly for monic inputs
        self.from_terms(terms)
    }

    /// Reduced Groebner basis of the ideal generated by `gens`.
    pub fn groebner_basis(&self, gens: &[Poly<F::Elem>]) -> Vec<Poly<F::Elem>> {
        let mut input: Vec<Poly<F::Elem>> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| self.monic(&self.adopt(g)))
            .collect();
        if input.iter().any(|g| g.terms()[0].0.is_one()) {
            return vec![self.one()];
        }
        input.sort_by(|a, b| self.cmp(&a.terms()[0].0, &b.terms()[0].0));

        let mut basis = Basis {
            polys: Vec::new(),
            lms: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
        };
        let mut pairs: Vec<Pair> = Vec::new();

        for g in input {
            let sugar = g.degree().unwrap_or(0);
            let h = {
                let refs: Vec<&Poly<F::Elem>> =
                    basis.active_indices().map(|i| &basis.polys[i]).collect();
                self.reduce_by(&g, &refs)
            };
            if h.is_zero() {
                continue;
            }
            if self.insert(&mut basis, &mut pairs, h, sugar) {
                return vec![self.one()];
            }
        }

        while let Some(k) = self.select_pair(&pairs) {
            let pair = pairs.swap_remove(k);
            let s = self.spoly(&basis.polys[pair.i], &basis.polys[pair.j], &pair.lcm);
            let h = {
                let refs: Vec<&Poly<F::Elem>> =
                    basis.active_indices().map(|i| &basis.polys[i]).collect();
                self.reduce_by(&s, &refs)
            };
            if h.is_zero() {
                continue;
            }
            if self.insert(&mut basis, &mut pairs, h, pair.sugar) {
                return vec![self.one()];
            }
        }

        self.reduce_basis(&basis)
    }

    fn select_pair(&self, pairs: &[Pair]) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, p) in pairs.iter().enumerate() {
            best = match best {
                None => Some(k),
                Some(b) => {
                    let q = &pairs[b];
                    let better = p.sugar < q.sugar
                        || (p.sugar == q.sugar && self.cmp(&p.lcm, &q.lcm) == Ordering::Less);
                    Some(if better { k } else { b })
                }
            };
        }
        best
    }

    /// Adds `h` to the basis and updates the pair set. Returns true when `h`
    /// is a nonzero constant.
    fn insert(
        &self,
        basis: &mut Basis<F::Elem>,
        pairs: &mut Vec<Pair>,
        h: Poly<F::Elem>,
        sugar: u32,
    ) -> bool {
        let h = self.monic(&h);
        let hlm = h.terms()[0].0;
        if hlm.is_one() {
            return true;
        }
        let hsugar = sugar.max(h.degree().unwrap_or(0));
        let new = basis.polys.len();

        // Gebauer-Moeller: candidate pairs (h, g)
        let old: Vec<usize> = basis.active_indices().collect();
        let lcms: Vec<Monomial> = old.iter().map(|&g| hlm.lcm(&basis.lms[g])).collect();
        let mut keep = vec![false; old.len()];
        for a in 0..old.len() {
            if hlm.is_coprime(&basis.lms[old[a]]) {
                keep[a] = true;
                continue;
            }
            let la = &lcms[a];
            let dominated = (a + 1..old.len()).any(|b| lcms[b].divides(la))
                || (0..a).any(|b| keep[b] && lcms[b].divides(la));
            keep[a] = !dominated;
        }

        // chain criterion on the existing pairs
        pairs.retain(|p| {
            !(hlm.divides(&p.lcm)
                && hlm.lcm(&basis.lms[p.i]) != p.lcm
                && hlm.lcm(&basis.lms[p.j]) != p.lcm)
        });

        for (a, &g) in old.iter().enumerate() {
            if !keep[a] || hlm.is_coprime(&basis.lms[g]) {
                continue;
            }
            let lcm = lcms[a];
            let glm = basis.lms[g];
            let s = (hsugar + hlm.quotient_of(&lcm).degree())
                .max(basis.sugar[g] + glm.quotient_of(&lcm).degree());
            pairs.push(Pair {
                i: g,
                j: new,
                lcm,
                sugar: s,
            });
        }

        for &g in &old {
            if hlm.divides(&basis.lms[g]) {
                basis.active[g] = false;
            }
        }
        basis.polys.push(h);
        basis.lms.push(hlm);
        basis.sugar.push(hsugar);
        basis.active.push(true);
        false
    }

    fn reduce_basis(&self, basis: &Basis<F::Elem>) -> Vec<Poly<F::Elem>> {
        let gens: Vec<&Poly<F::Elem>> = basis
            .active_indices()
            .map(|i| &basis.polys[i])
            .collect();
        self.interreduce(gens)
    }

    /// Turns a Groebner basis into the reduced one without new S-pairs.
    pub(crate) fn reduce_known_basis(&self, gb: &[Poly<F::Elem>]) -> Vec<Poly<F::Elem>> {
        let monic: Vec<Poly<F::Elem>> = gb
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| self.monic(g))
            .collect();
        if monic.iter().any(|g| g.terms()[0].0.is_one()) {
            return vec![self.one()];
        }
        let mut minimal: Vec<&Poly<F::Elem>> = Vec::new();
        for (k, g) in monic.iter().enumerate() {
            let lm = &g.terms()[0].0;
            let redundant = monic.iter().enumerate().any(|(l, h)| {
                let hm = &h.terms()[0].0;
                l != k && hm.divides(lm) && (hm != lm || l < k)
            });
            if !redundant {
                minimal.push(g);
            }
        }
        self.interreduce(minimal)
    }

    fn interreduce(&self, mut gens: Vec<&Poly<F::Elem>>) -> Vec<Poly<F::Elem>> {
        gens.sort_by(|a, b| self.cmp(&a.terms()[0].0, &b.terms()[0].0));
        let mut out = Vec::with_capacity(gens.len());
        for (k, g) in gens.iter().enumerate() {
            let others: Vec<&Poly<F::Elem>> = gens
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != k)
                .map(|(_, p)| *p)
                .collect();
            let head = &g.terms()[..1];
            let tail = self.from_sorted(g.terms()[1..].to_vec());
            let tail = self.reduce_by(&tail, &others);
            let mut terms = head.to_vec();
            terms.extend(tail.terms().iter().cloned());
            out.push(self.from_sorted(terms));
        }
        out
    }

    /// Checks Buchberger's criterion directly: every S-polynomial reduces to
    /// zero. Independent of the pair bookkeeping above.
    pub fn is_groebner_basis(&self, basis: &[Poly<F::Elem>]) -> bool {
        let monic: Vec<Poly<F::Elem>> = basis
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| self.monic(g))
            .collect();
        for i in 0..monic.len() {
            for j in i + 1..monic.len() {
                let lcm = monic[i].terms()[0].0.lcm(&monic[j].terms()[0].0);
                let s = self.spoly(&monic[i], &monic[j], &lcm);
                if !self.normal_form(&s, &monic).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn p1() -> Ring<PrimeField> {
        Ring::new(PrimeField::default(), &[1]).unwrap()
    }

    #[test]
    fn principal_ideal_is_monic_generator() {
        let r = Ring::new(PrimeField::default(), &[2]).unwrap();
        let f = *r.field();
        let g = r.linear_form(&[(0, f.from_i64(3)), (2, f.from_i64(5))]);
        let gb = r.groebner_basis(std::slice::from_ref(&g));
        assert_eq!(gb, vec![r.monic(&g)]);
    }

    #[test]
    fn two_points_of_p1() {
        // (x1) ∩ (x0) contains x0*x1; the GB of the product ideal is {x0 x1}
        let r = p1();
        let prod = r.mul(&r.var(0), &r.var(1));
        let gb = r.groebner_basis(std::slice::from_ref(&prod));
        assert_eq!(gb, vec![prod]);
    }

    #[test]
    fn unit_detection() {
        let r = p1();
        let f = *r.field();
        let a = r.sub(&r.var(0), &r.one());
        let b = r.var(0);
        let gb = r.groebner_basis(&[a, b]);
        assert_eq!(gb, vec![r.one()]);
        let _ = f;
    }

    #[test]
    fn normal_form_membership() {
        let r = Ring::new(PrimeField::default(), &[1, 1]).unwrap();
        let gens = vec![r.mul(&r.var(0), &r.var(2)), r.mul(&r.var(1), &r.var(3))];
        let gb = r.groebner_basis(&gens);
        let member = r.add(
            &r.mul(&gens[0], &r.var(1)),
            &r.mul(&gens[1], &r.var(2)),
        );
        assert!(r.normal_form(&member, &gb).is_zero());
        assert_eq!(r.normal_form(&r.one(), &gb), r.one());
        assert!(r.is_groebner_basis(&gb));
    }

    #[test]
    fn twisted_cubic_like_basis() {
        // 2x2 minors of [[x0, x1, x2], [x1, x2, x3]] in P^3
        let r = Ring::new(PrimeField::default(), &[3]).unwrap();
        let v: Vec<_> = (0..4).map(|i| r.var(i)).collect();
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            r.sub(&r.mul(&v[a], &v[d]), &r.mul(&v[b], &v[c]))
        };
        let gens = vec![minor(0, 1, 1, 2), minor(0, 2, 1, 3), minor(1, 2, 2, 3)];
        let gb = r.groebner_basis(&gens);
        assert!(r.is_groebner_basis(&gb));
        assert_eq!(gb.len(), 3);
    }
}
