//! Multigraded polynomial rings and sparse polynomials.

use std::cmp::Ordering;
use std::fmt;

use crate::field::Field;
use crate::monomial::{monomials_of_degree, Monomial, MAX_VARS};
use crate::AlgebraError;

/// Term order in use by a ring.
///
/// Ambient variables are ordered factor-major; auxiliary variables sit after
/// them in the exponent vector and, when present, form a leading elimination
/// block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Degree reverse lexicographic on all variables.
    DegRevLex,
    /// Compare total degree in the auxiliary block first, then degrevlex.
    Elimination { aux: usize },
}

/// A sparse polynomial: terms strictly decreasing under the ring's order,
/// no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E> Poly<E> {
    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&E> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Maximal total degree of a term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn into_terms(self) -> Vec<(Monomial, E)> {
        self.terms
    }
}

/// Polynomial ring `k[x_{i,j}]` over a product of projective spaces with
/// optional auxiliary variables.
///
/// Variable `x_{i,j}` (factor `i`, coordinate `j`) has index
/// `offset(i) + j` and multidegree `e_i`. Auxiliary variables carry
/// multidegree zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Ring<F: Field> {
    field: F,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    n_ambient: usize,
    n_aux: usize,
    var_factor: Vec<usize>,
}

impl<F: Field> Ring<F> {
    /// Coordinate ring of `P^{dims[0]} x ... x P^{dims[n-1]}`.
    pub fn new(field: F, dims: &[usize]) -> Result<Self, AlgebraError> {
        Self::with_aux(field, dims, 0)
    }

    pub fn with_aux(field: F, dims: &[usize], n_aux: usize) -> Result<Self, AlgebraError> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(AlgebraError::InvalidShape(dims.to_vec()));
        }
        let mut offsets = Vec::with_capacity(dims.len());
        let mut var_factor = Vec::new();
        let mut n = 0;
        for (i, &a) in dims.iter().enumerate() {
            offsets.push(n);
            n += a + 1;
            var_factor.extend(std::iter::repeat_n(i, a + 1));
        }
        // one slot stays free for the elimination variable of intersections
        if n + n_aux.max(1) > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(n + n_aux));
        }
        Ok(Ring {
            field,
            dims: dims.to_vec(),
            offsets,
            n_ambient: n,
            n_aux,
            var_factor,
        })
    }

    /// Same ambient ring with `n_aux` auxiliary variables appended.
    pub fn extend_aux(&self, n_aux: usize) -> Result<Self, AlgebraError> {
        Self::with_aux(self.field.clone(), &self.dims, n_aux)
    }

    /// Same ambient ring without auxiliary variables.
    pub fn ambient(&self) -> Self {
        let mut r = self.clone();
        r.n_aux = 0;
        r
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_factors(&self) -> usize {
        self.dims.len()
    }

    pub fn num_vars(&self) -> usize {
        self.n_ambient + self.n_aux
    }

    pub fn num_ambient_vars(&self) -> usize {
        self.n_ambient
    }

    pub fn num_aux_vars(&self) -> usize {
        self.n_aux
    }

    /// Index of `x_{factor, j}`.
    pub fn var_index(&self, factor: usize, j: usize) -> usize {
        assert!(j <= self.dims[factor]);
        self.offsets[factor] + j
    }

    pub fn factor_vars(&self, factor: usize) -> std::ops::Range<usize> {
        self.offsets[factor]..self.offsets[factor] + self.dims[factor] + 1
    }

    pub fn aux_index(&self, k: usize) -> usize {
        assert!(k < self.n_aux);
        self.n_ambient + k
    }

    pub fn order(&self) -> MonomialOrder {
        if self.n_aux == 0 {
            MonomialOrder::DegRevLex
        } else {
            MonomialOrder::Elimination { aux: self.n_aux }
        }
    }

    pub fn same_ambient(&self, other: &Self) -> bool {
        self.field == other.field && self.dims == other.dims
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.n_aux > 0 {
            let aux = self.n_ambient..self.n_ambient + self.n_aux;
            let (wa, wb) = (a.degree_in(aux.clone()), b.degree_in(aux));
            if wa != wb {
                return wa.cmp(&wb);
            }
        }
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (ea, eb) = (a.exps(), b.exps());
        for i in (0..self.num_vars()).rev() {
            if ea[i] != eb[i] {
                return eb[i].cmp(&ea[i]);
            }
        }
        Ordering::Equal
    }

    /// Multidegree of a monomial (auxiliary variables ignored).
    pub fn multidegree_of(&self, m: &Monomial) -> Vec<u32> {
        (0..self.dims.len())
            .map(|i| m.degree_in(self.factor_vars(i)))
            .collect()
    }

    /// Monomials of the given multidegree, in ambient variables.
    pub fn monomials_of_multidegree(&self, d: &[u32]) -> Vec<Monomial> {
        assert_eq!(d.len(), self.dims.len());
        let mut acc = vec![Monomial::one()];
        for (i, &di) in d.iter().enumerate() {
            let block = monomials_of_degree(self.dims[i] + 1, di, self.offsets[i]);
            acc = acc
                .iter()
                .flat_map(|m| block.iter().map(move |b| m.mul(b)))
                .collect();
        }
        acc.sort_by(|a, b| self.cmp(b, a));
        acc
    }

    /// Monomials of the given standard degree in the ambient variables.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut v = monomials_of_degree(self.n_ambient, d, 0);
        v.sort_by(|a, b| self.cmp(b, a));
        v
    }

    // ---- constructors -------------------------------------------------

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly { terms: Vec::new() }
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.term(Monomial::one(), c)
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(&c) {
            self.zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(&self, m: Monomial) -> Poly<F::Elem> {
        self.term(m, self.field.one())
    }

    pub fn var(&self, i: usize) -> Poly<F::Elem> {
        assert!(i < self.num_vars());
        self.monomial(Monomial::var(i))
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates,
    /// drops zeros.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, F::Elem)>) -> Poly<F::Elem> {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !self.field.is_zero(c));
        Poly { terms: out }
    }

    /// Wraps terms already in strictly decreasing order with no zeros.
    #[allow(clippy::wrong_self_convention)]
    pub(crate) fn from_sorted(&self, terms: Vec<(Monomial, F::Elem)>) -> Poly<F::Elem> {
        debug_assert!(terms
            .windows(2)
            .all(|w| self.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Poly { terms }
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear_form(&self, coeffs: &[(usize, F::Elem)]) -> Poly<F::Elem> {
        self.from_terms(
            coeffs
                .iter()
                .map(|(i, c)| (Monomial::var(*i), c.clone()))
                .collect(),
        )
    }

    // ---- arithmetic ---------------------------------------------------

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.combine(a, b, false)
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.combine(a, b, true)
    }

    fn combine(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>, negate_b: bool) -> Poly<F::Elem> {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let bcoef = |c: &F::Elem| if negate_b { f.neg(c) } else { c.clone() };
        while i < a.terms.len() && j < b.terms.len() {
            let (ma, ca) = &a.terms[i];
            let (mb, cb) = &b.terms[j];
            match self.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, bcoef(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b { f.sub(ca, cb) } else { f.add(ca, cb) };
                    if !f.is_zero(&c) {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a.terms[i..].iter().cloned());
        out.extend(b.terms[j..].iter().map(|(m, c)| (*m, bcoef(c))));
        Poly { terms: out }
    }

    /// `a - c * m * b`, the elementary reduction step.
    pub(crate) fn sub_scaled(
        &self,
        a: &[(Monomial, F::Elem)],
        c: &F::Elem,
        m: &Monomial,
        b: &[(Monomial, F::Elem)],
    ) -> Vec<(Monomial, F::Elem)> {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let next_b = |j: usize| -> (Monomial, F::Elem) {
            let (mb, cb) = &b[j];
            (m.mul(mb), f.mul(c, cb))
        };
        let mut pending: Option<(Monomial, F::Elem)> = if b.is_empty() { None } else { Some(next_b(0)) };
        while i < a.len() {
            let Some((mb, cb)) = pending.as_ref() else { break };
            let (ma, ca) = &a[i];
            match self.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, f.neg(cb)));
                    j += 1;
                    pending = if j < b.len() { Some(next_b(j)) } else { None };
                }
                Ordering::Equal => {
                    let s = f.sub(ca, cb);
                    if !f.is_zero(&s) {
                        out.push((*ma, s));
                    }
                    i += 1;
                    j += 1;
                    pending = if j < b.len() { Some(next_b(j)) } else { None };
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        if let Some((mb, cb)) = pending {
            out.push((mb, f.neg(&cb)));
            for k in j + 1..b.len() {
                let (mb, cb) = next_b(k);
                out.push((mb, f.neg(&cb)));
            }
        }
        out
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (*m, self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        Poly {
            terms: a
                .terms
                .iter()
                .map(|(m, x)| (*m, self.field.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, a: &Poly<F::Elem>, m: &Monomial, c: &F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        Poly {
            terms: a
                .terms
                .iter()
                .map(|(am, x)| (am.mul(m), self.field.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if a.len() == 1 {
            return self.mul_term(b, &a.terms[0].0, &a.terms[0].1);
        }
        if b.len() == 1 {
            return self.mul_term(a, &b.terms[0].0, &b.terms[0].1);
        }
        let mut acc = Vec::with_capacity(a.len() * b.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                acc.push((ma.mul(mb), self.field.mul(ca, cb)));
            }
        }
        self.from_terms(acc)
    }

    pub fn pow(&self, a: &Poly<F::Elem>, e: u32) -> Poly<F::Elem> {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    pub fn product<'a, I>(&self, polys: I) -> Poly<F::Elem>
    where
        I: IntoIterator<Item = &'a Poly<F::Elem>>,
        F::Elem: 'a,
    {
        polys.into_iter().fold(self.one(), |acc, p| self.mul(&acc, p))
    }

    /// Scales to leading coefficient one.
    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.leading_coeff() {
            None => self.zero(),
            Some(c) if self.field.is_one(c) => a.clone(),
            Some(c) => self.scale(a, &self.field.inv(c)),
        }
    }

    /// Exact division `a / b`.
    pub fn exact_div(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>, AlgebraError> {
        let (bm, bc) = match b.terms.first() {
            Some(t) => t,
            None => return Err(AlgebraError::DivisionByZero),
        };
        let binv = self.field.inv(bc);
        let mut rem = a.terms.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.first() {
            if !bm.divides(rm) {
                return Err(AlgebraError::InexactDivision);
            }
            let qm = bm.quotient_of(rm);
            let qc = self.field.mul(rc, &binv);
            rem = self.sub_scaled(&rem, &qc, &qm, &b.terms);
            quot.push((qm, qc));
        }
        Ok(Poly { terms: quot })
    }

    /// Divides `a` by `b` when possible.
    pub fn try_div(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        self.exact_div(a, b).ok()
    }

    // ---- gradings -----------------------------------------------------

    /// Multidegree when `a` is nonzero and multihomogeneous.
    pub fn multidegree(&self, a: &Poly<F::Elem>) -> Option<Vec<u32>> {
        let (first, rest) = a.terms.split_first()?;
        let d = self.multidegree_of(&first.0);
        rest.iter()
            .all(|(m, _)| self.multidegree_of(m) == d)
            .then_some(d)
    }

    pub fn is_multihomogeneous(&self, a: &Poly<F::Elem>) -> bool {
        a.is_zero() || self.multidegree(a).is_some()
    }

    /// Standard-graded homogeneity over all variables.
    pub fn is_homogeneous(&self, a: &Poly<F::Elem>) -> bool {
        match a.terms.split_first() {
            None => true,
            Some((first, rest)) => rest.iter().all(|(m, _)| m.degree() == first.0.degree()),
        }
    }

    /// Value at a point given by one coordinate per ring variable.
    pub fn evaluate(&self, a: &Poly<F::Elem>, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        assert!(point.len() >= self.num_vars());
        let mut acc = f.zero();
        for (m, c) in &a.terms {
            let mut v = c.clone();
            for (i, &e) in m.exps().iter().enumerate().take(self.num_vars()) {
                for _ in 0..e {
                    v = f.mul(&v, &point[i]);
                }
            }
            acc = f.add(&acc, &v);
        }
        acc
    }

    /// Renames variables: variable `i` becomes `perm[i]`.
    pub fn permute_vars(&self, a: &Poly<F::Elem>, perm: &[usize]) -> Poly<F::Elem> {
        assert_eq!(perm.len(), self.num_vars());
        let terms = a
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = [0u16; MAX_VARS];
                for (i, &p) in perm.iter().enumerate() {
                    e[p] = m.exp(i);
                }
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        self.from_terms(terms)
    }

    /// Moves a polynomial written in `source` into this ring, sending the
    /// ambient variables of `source` to indices starting at `offset`.
    pub fn embed_from(&self, source: &Ring<F>, a: &Poly<F::Elem>, offset: usize) -> Poly<F::Elem> {
        assert!(offset + source.num_ambient_vars() <= self.num_ambient_vars());
        let terms = a
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = [0u16; MAX_VARS];
                for i in 0..source.num_ambient_vars() {
                    e[offset + i] = m.exp(i);
                }
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        self.from_terms(terms)
    }

    /// Re-sorts terms under this ring's order. Needed when a polynomial built
    /// in the ambient ring is used in an extension with auxiliary variables
    /// (a no-op unless the polynomial involves auxiliary variables).
    pub fn adopt(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.from_terms(a.terms.clone())
    }

    // ---- printing -----------------------------------------------------

    pub fn var_name(&self, i: usize) -> String {
        const LETTERS: [char; 6] = ['x', 'y', 'z', 'w', 'u', 'v'];
        if i >= self.n_ambient {
            let k = i - self.n_ambient;
            return if self.n_aux == 1 { "t".into() } else { format!("t{k}") };
        }
        let fac = self.var_factor[i];
        let j = i - self.offsets[fac];
        if self.dims.len() <= LETTERS.len() {
            format!("{}{}", LETTERS[fac], j)
        } else {
            format!("x{}_{}", fac + 1, j)
        }
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = (0..self.num_vars())
            .filter(|&i| m.exp(i) > 0)
            .map(|i| match m.exp(i) {
                1 => self.var_name(i),
                e => format!("{}^{}", self.var_name(i), e),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn fmt_poly(&self, a: &Poly<F::Elem>) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in a.terms.iter().enumerate() {
            let mut cs = self.field.fmt_coeff(c);
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if k == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&cs);
            } else if cs == "1" {
                s.push_str(&self.fmt_monomial(m));
            } else {
                s.push_str(&cs);
                s.push('*');
                s.push_str(&self.fmt_monomial(m));
            }
        }
        s
    }

    pub fn display<'a>(&'a self, a: &'a Poly<F::Elem>) -> impl fmt::Display + 'a {
        struct D<'a, F: Field>(&'a Ring<F>, &'a Poly<F::Elem>);
        impl<F: Field> fmt::Display for D<'_, F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.fmt_poly(self.1))
            }
        }
        D(self, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring() -> Ring<PrimeField> {
        Ring::new(PrimeField::default(), &[1, 2]).unwrap()
    }

    #[test]
    fn variable_layout() {
        let r = ring();
        assert_eq!(r.num_vars(), 5);
        assert_eq!(r.var_index(1, 0), 2);
        assert_eq!(r.var_name(0), "x0");
        assert_eq!(r.var_name(4), "y2");
        assert_eq!(r.factor_vars(1), 2..5);
    }

    #[test]
    fn degrevlex_basics() {
        let r = ring();
        let x0 = Monomial::var(0);
        let x1 = Monomial::var(1);
        let y2 = Monomial::var(4);
        // x0 > x1 > ... > y2 in degree one
        assert_eq!(r.cmp(&x0, &x1), Ordering::Greater);
        assert_eq!(r.cmp(&x1, &y2), Ordering::Greater);
        // x1^2 > x0*y2 in degrevlex (y2 is the smallest variable)
        assert_eq!(r.cmp(&x1.mul(&x1), &x0.mul(&y2)), Ordering::Greater);
        // higher degree wins
        assert_eq!(r.cmp(&y2.mul(&y2), &x0), Ordering::Greater);
    }

    #[test]
    fn elimination_order_prefers_aux() {
        let r = ring().extend_aux(1).unwrap();
        let t = Monomial::var(r.aux_index(0));
        let big = Monomial::from_exponents(&[3, 3]);
        assert_eq!(r.cmp(&t, &big), Ordering::Greater);
    }

    #[test]
    fn arithmetic_and_division() {
        let r = ring();
        let f = *r.field();
        let x0 = r.var(0);
        let y0 = r.var(2);
        let a = r.add(&x0, &y0);
        let b = r.sub(&x0, &y0);
        let p = r.mul(&a, &b);
        // (x0 + y0)(x0 - y0) = x0^2 - y0^2
        assert_eq!(p.len(), 2);
        assert_eq!(r.exact_div(&p, &a).unwrap(), b);
        assert!(r.exact_div(&p, &r.var(1)).is_err());
        let neg = r.scale(&p, &f.from_i64(-1));
        assert!(r.add(&p, &neg).is_zero());
    }

    #[test]
    fn multidegree_detection() {
        let r = ring();
        let xy = r.mul(&r.var(0), &r.var(3));
        assert_eq!(r.multidegree(&xy), Some(vec![1, 1]));
        let mixed = r.add(&r.var(0), &r.var(3));
        assert_eq!(r.multidegree(&mixed), None);
        assert!(r.is_homogeneous(&mixed));
    }

    #[test]
    fn multidegree_monomial_count() {
        let r = ring();
        assert_eq!(r.monomials_of_multidegree(&[1, 1]).len(), 6);
        assert_eq!(r.monomials_of_multidegree(&[2, 2]).len(), 18);
    }

    #[test]
    fn printing() {
        let r = ring();
        let f = *r.field();
        let p = r.linear_form(&[(0, f.from_i64(2)), (1, f.from_i64(-1))]);
        assert_eq!(r.fmt_poly(&p), "2*x0 - x1");
    }
}
