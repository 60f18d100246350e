//! Ideals with a cached reduced Groebner basis.

use std::sync::OnceLock;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::ring::{Poly, Ring};
use crate::AlgebraError;

/// An ideal of a [`Ring`], given by generators.
///
/// The reduced Groebner basis is computed on first use and cached. Two ideals
/// compare equal iff their reduced bases agree.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Poly<F::Elem>>,
    gb: OnceLock<Vec<Poly<F::Elem>>>,
}

impl<F: Field> PartialEq for Ideal<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.groebner() == other.groebner()
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Ring<F>, gens: Vec<Poly<F::Elem>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        }
    }

    fn with_basis(ring: &Ring<F>, gb: Vec<Poly<F::Elem>>) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(gb.clone());
        Ideal {
            ring: ring.clone(),
            gens: gb,
            gb: cell,
        }
    }

    pub fn zero(ring: &Ring<F>) -> Self {
        Self::with_basis(ring, Vec::new())
    }

    pub fn unit(ring: &Ring<F>) -> Self {
        Self::with_basis(ring, vec![ring.one()])
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<F::Elem>] {
        &self.gens
    }

    /// Reduced Groebner basis, sorted by increasing leading monomial.
    pub fn groebner(&self) -> &[Poly<F::Elem>] {
        self.gb.get_or_init(|| self.ring.groebner_basis(&self.gens))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner()
            .iter()
            .map(|g| *g.leading_monomial().expect("nonzero basis element"))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.groebner().is_empty()
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.groebner(), [g] if g.leading_monomial().is_some_and(|m| m.is_one()))
    }

    pub fn normal_form(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.ring.normal_form(f, self.groebner())
    }

    pub fn contains(&self, f: &Poly<F::Elem>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// True when every generator is multihomogeneous.
    pub fn is_multihomogeneous(&self) -> bool {
        self.gens.iter().all(|g| self.ring.is_multihomogeneous(g))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| self.ring.is_homogeneous(g))
    }

    fn check_ring(&self, other: &Ideal<F>) -> Result<(), AlgebraError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Self, AlgebraError> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Self, AlgebraError> {
        self.check_ring(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.ring.mul(a, b))
            .collect();
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `I ∩ J`, by eliminating `t` from `t*I + (1 - t)*J`.
    pub fn intersection(&self, other: &Ideal<F>) -> Result<Self, AlgebraError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let ext = self.ring.extend_aux(self.ring.num_aux_vars() + 1)?;
        if self.ring.num_aux_vars() > 0 {
            // elimination needs t to be the only auxiliary variable
            return Err(AlgebraError::TooManyVariables(ext.num_vars()));
        }
        let t = ext.var(ext.aux_index(0));
        let one_minus_t = ext.sub(&ext.one(), &t);
        let mut gens: Vec<Poly<F::Elem>> = self
            .groebner()
            .iter()
            .map(|g| ext.mul(&t, &ext.adopt(g)))
            .collect();
        gens.extend(
            other
                .groebner()
                .iter()
                .map(|g| ext.mul(&one_minus_t, &ext.adopt(g))),
        );
        let tvar = ext.aux_index(0);
        let gb: Vec<Poly<F::Elem>> = ext
            .groebner_basis(&gens)
            .into_iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exp(tvar) == 0))
            .map(|g| self.ring.adopt(&g))
            .collect();
        Ok(Ideal::with_basis(&self.ring, gb))
    }

    /// Intersection of a nonempty family, combined pairwise in a balanced
    /// tree.
    pub fn intersection_all(ideals: &[Ideal<F>]) -> Result<Self, AlgebraError> {
        match ideals {
            [] => panic!("intersection of an empty family"),
            [one] => Ok(one.clone()),
            _ => {
                let (a, b) = ideals.split_at(ideals.len() / 2);
                Self::intersection_all(a)?.intersection(&Self::intersection_all(b)?)
            }
        }
    }

    /// `I : f`, computed from `I ∩ (f)` by exact division.
    pub fn quotient_poly(&self, f: &Poly<F::Elem>) -> Result<Self, AlgebraError> {
        if f.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if f.leading_monomial().is_some_and(|m| m.is_one()) {
            return Ok(self.clone());
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()]);
        let meet = self.intersection(&principal)?;
        let quotients = meet
            .groebner()
            .iter()
            .map(|g| self.ring.exact_div(g, f))
            .collect::<Result<Vec<_>, _>>()?;
        // leading monomials divide out uniformly, so this is still a basis
        let gb = self.ring.reduce_known_basis(&quotients);
        Ok(Ideal::with_basis(&self.ring, gb))
    }

    /// `I : J`, the intersection of `I : g` over the generators `g` of `J`.
    pub fn quotient(&self, other: &Ideal<F>) -> Result<Self, AlgebraError> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let parts = other
            .gens
            .iter()
            .map(|g| self.quotient_poly(g))
            .collect::<Result<Vec<_>, _>>()?;
        Self::intersection_all(&parts)
    }

    /// `I : f^∞`, iterating quotients until they stabilize.
    pub fn saturation_poly(&self, f: &Poly<F::Elem>) -> Result<Self, AlgebraError> {
        let mut cur = self.clone();
        loop {
            let next = cur.quotient_poly(f)?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `I : x_i^∞` for a single ambient variable.
    ///
    /// For homogeneous ideals this swaps `x_i` to the last position, where
    /// degrevlex lets the variable be divided out of a Groebner basis
    /// directly. Other ideals go through iterated quotients.
    pub fn saturation_var(&self, i: usize) -> Self {
        let ring = &self.ring;
        assert!(i < ring.num_ambient_vars());
        if ring.num_aux_vars() > 0 || !self.is_homogeneous() {
            return self
                .saturation_poly(&ring.var(i))
                .expect("variable is nonzero");
        }
        let last = ring.num_ambient_vars() - 1;
        let mut perm: Vec<usize> = (0..ring.num_vars()).collect();
        perm.swap(i, last);
        let swapped: Vec<Poly<F::Elem>> = self
            .gens
            .iter()
            .map(|g| ring.permute_vars(g, &perm))
            .collect();
        let gb = ring.groebner_basis(&swapped);
        let stripped: Vec<Poly<F::Elem>> = gb
            .iter()
            .map(|g| {
                let e = g.terms().iter().map(|(m, _)| m.exp(last)).min().unwrap_or(0);
                let terms = g
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let mut exps = *m.exps();
                        exps[last] -= e;
                        (Monomial::from_exponents(&exps), c.clone())
                    })
                    .collect();
                ring.permute_vars(&ring.from_terms(terms), &perm)
            })
            .collect();
        Ideal::new(ring, stripped)
    }

    /// `I : J^∞` as the intersection of `I : g^∞` over generators of `J`.
    pub fn saturation(&self, other: &Ideal<F>) -> Result<Self, AlgebraError> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let parts = other
            .gens
            .iter()
            .map(|g| match single_variable(g) {
                Some(v) if v < self.ring.num_ambient_vars() => Ok(self.saturation_var(v)),
                _ => self.saturation_poly(g),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::intersection_all(&parts)
    }

    /// Saturation by the multigraded irrelevant ideal: successively by each
    /// factor's maximal ideal `(x_{i,0}, ..., x_{i,a_i})`.
    pub fn saturation_irrelevant(&self) -> Self {
        let mut cur = self.clone();
        for f in 0..self.ring.num_factors() {
            let parts: Vec<Ideal<F>> = self
                .ring
                .factor_vars(f)
                .map(|v| cur.saturation_var(v))
                .collect();
            cur = Self::intersection_all(&parts).expect("same ring");
        }
        cur
    }

    /// Saturation by the ideal of all ambient variables.
    pub fn saturation_maximal(&self) -> Self {
        let parts: Vec<Ideal<F>> = (0..self.ring.num_ambient_vars())
            .map(|v| self.saturation_var(v))
            .collect();
        Self::intersection_all(&parts).expect("same ring")
    }

    pub fn is_saturated_irrelevant(&self) -> bool {
        self.saturation_irrelevant() == *self
    }

    /// Human-readable list of the reduced basis.
    pub fn fmt_groebner(&self) -> Vec<String> {
        self.groebner().iter().map(|g| self.ring.fmt_poly(g)).collect()
    }
}

/// Index of `v` when `p` is a monic single variable.
fn single_variable<E>(p: &Poly<E>) -> Option<usize> {
    match p.terms() {
        [(m, _)] if m.degree() == 1 => (0..crate::MAX_VARS).find(|&i| m.exp(i) == 1),
        _ => None,
    }
}
