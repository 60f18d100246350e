//! Point configurations in products of projective spaces and their
//! combinatorics: projections, level sets, the star and inclusion properties,
//! staircases and the A/B split over `P^1 x P^n`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use mpacm_algebra::hilbert::binomial;
use mpacm_algebra::linalg::mat_vec;
use mpacm_algebra::Field;

use crate::error::ConfigError;

/// Dimensions `(a_1, ..., a_n)` of `P^{a_1} x ... x P^{a_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorShape {
    dims: Vec<usize>,
}

impl FactorShape {
    pub fn new(dims: &[usize]) -> Result<Self, ConfigError> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(ConfigError::InvalidShape(dims.to_vec()));
        }
        Ok(FactorShape {
            dims: dims.to_vec(),
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_factors(&self) -> usize {
        self.dims.len()
    }

    /// `sum (a_i + 1)`, the number of ambient variables.
    pub fn num_vars(&self) -> usize {
        self.dims.iter().map(|a| a + 1).sum()
    }

    /// Shape with factor `i` removed.
    pub fn without(&self, i: usize) -> Result<Self, ConfigError> {
        if self.dims.len() < 2 {
            return Err(ConfigError::NeedsFactors {
                needed: 2,
                got: self.dims.len(),
            });
        }
        self.check_factor(i)?;
        let mut dims = self.dims.clone();
        dims.remove(i);
        FactorShape::new(&dims)
    }

    pub fn check_factor(&self, i: usize) -> Result<(), ConfigError> {
        if i < self.dims.len() {
            Ok(())
        } else {
            Err(ConfigError::FactorOutOfRange {
                factor: i,
                factors: self.dims.len(),
            })
        }
    }
}

impl fmt::Display for FactorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|a| format!("P^{a}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// A point of `P^a`, normalized so that its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint<E> {
    coords: Vec<E>,
}

impl<E: Clone + Eq> ProjPoint<E> {
    /// `None` when all coordinates vanish.
    pub fn new<F: Field<Elem = E>>(field: &F, coords: Vec<E>) -> Option<Self> {
        let k = coords.iter().position(|c| !field.is_zero(c))?;
        let inv = field.inv(&coords[k]);
        let coords = coords.iter().map(|c| field.mul(c, &inv)).collect();
        Some(ProjPoint { coords })
    }

    pub fn from_integers<F: Field<Elem = E>>(field: &F, coords: &[i64]) -> Option<Self> {
        Self::new(field, coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

/// A point of a product space, one [`ProjPoint`] per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoint<E> {
    parts: Vec<ProjPoint<E>>,
}

impl<E: Clone + Eq> MultiPoint<E> {
    pub fn new(parts: Vec<ProjPoint<E>>) -> Self {
        MultiPoint { parts }
    }

    pub fn parts(&self) -> &[ProjPoint<E>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &ProjPoint<E> {
        &self.parts[i]
    }

    /// The point with factor `i` omitted.
    pub fn omit(&self, i: usize) -> MultiPoint<E> {
        let mut parts = self.parts.clone();
        parts.remove(i);
        MultiPoint { parts }
    }

    /// All coordinates concatenated factor by factor.
    pub fn flat_coords(&self) -> Vec<E> {
        self.parts.iter().flat_map(|p| p.coords.iter().cloned()).collect()
    }
}

/// Integer description of a configuration, independent of the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntConfig {
    pub dims: Vec<usize>,
    /// `points[k][i]` is the coordinate tuple of point `k` in factor `i`.
    pub points: Vec<Vec<Vec<i64>>>,
}

impl IntConfig {
    pub fn realize<F: Field>(&self, field: &F) -> Result<Configuration<F>, ConfigError> {
        Configuration::from_integers(field, &self.dims, &self.points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A nonempty finite set of distinct points of a product of projective
/// spaces, kept in input order.
#[derive(Clone, Debug)]
pub struct Configuration<F: Field> {
    field: F,
    shape: FactorShape,
    points: Vec<MultiPoint<F::Elem>>,
    index: HashMap<MultiPoint<F::Elem>, usize>,
}

impl<F: Field> PartialEq for Configuration<F> {
    /// Equality as point sets.
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape
            && self.points.len() == other.points.len()
            && self.points.iter().all(|p| other.contains(p))
    }
}

/// Level sets of a configuration with respect to one factor.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelDecomposition<E> {
    pub factor: usize,
    /// `(P_j, indices of the points over P_j)`, by first occurrence.
    pub classes: Vec<(ProjPoint<E>, Vec<usize>)>,
}

/// Corner description of a star configuration in `P^a x P^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Staircase<E> {
    /// `(i_k, j_k)` with `i` strictly decreasing and `j` strictly increasing.
    pub corners: Vec<(usize, usize)>,
    pub row_points: Vec<ProjPoint<E>>,
    pub col_points: Vec<ProjPoint<E>>,
}

/// One row of the A/B split.
#[derive(Clone, Debug, PartialEq)]
pub struct AbLevel<E> {
    pub row: ProjPoint<E>,
    /// `Y_i`, the second-factor points of the level set.
    pub y: Vec<ProjPoint<E>>,
    /// Indices of `A_i(X)` and `B_i(X)`.
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// The split `X = A_X ∪ B_X` of a configuration in `P^1 x P^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AbPartition<E> {
    pub a_part: Vec<usize>,
    pub b_part: Vec<usize>,
    /// Second-factor points of `A_X`, by first occurrence.
    pub a_y: Vec<ProjPoint<E>>,
    /// `B_Y`, the second-factor points common to every level.
    pub b_y: Vec<ProjPoint<E>>,
    pub n0: usize,
    pub n1: usize,
    pub levels: Vec<AbLevel<E>>,
}

/// Membership of `n1` in the admissible set, with the interval index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DMembership {
    pub member: bool,
    /// `i` with `C(n0 + i, n) <= n1 <= C(n0 + i + 1, n) - n0`.
    pub witness: Option<i64>,
}

/// Whether `n1 ∈ ⋃_i {C(n0+i, n), ..., C(n0+i+1, n) - n0}`.
///
/// Binomials with top below bottom count as zero; intervals with `m < n` are
/// then empty because `n0 >= 2`, so the scan starts at `m = n` and stops at
/// the first `m` with `C(m, n) > n1`.
pub fn d_membership(n0: u64, n1: u64, n: u64) -> Result<DMembership, ConfigError> {
    if n < 2 || n0 < 2 {
        return Err(ConfigError::InvalidArgument(format!(
            "admissible set needs n >= 2 and n0 >= 2, got n = {n}, n0 = {n0}"
        )));
    }
    let n1w = n1 as u128;
    let mut m = n;
    while binomial(m, n) <= n1w {
        let upper = binomial(m + 1, n).saturating_sub(n0 as u128);
        if n1w <= upper {
            return Ok(DMembership {
                member: true,
                witness: Some(m as i64 - n0 as i64),
            });
        }
        m += 1;
    }
    Ok(DMembership {
        member: false,
        witness: None,
    })
}

/// Hypotheses of the iff criterion for `P^1 x P^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountCriterionReport {
    /// `Y_i ∩ Y_j ⊆ B_Y` for all `i != j`.
    pub pairwise_in_b_y: bool,
    /// Genericity certificate for the relevant second-factor sets.
    pub generic: bool,
    pub inclusion_absent: bool,
}

impl CountCriterionReport {
    pub fn applies(&self) -> bool {
        self.pairwise_in_b_y && self.generic && self.inclusion_absent
    }
}

fn contains_all<E: Eq + std::hash::Hash>(big: &HashSet<E>, small: &HashSet<E>) -> bool {
    small.iter().all(|x| big.contains(x))
}

fn dedup_in_order<T: Clone + Eq + std::hash::Hash>(items: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in items {
        if seen.insert(x.clone()) {
            out.push(x);
        }
    }
    out
}

impl<F: Field> Configuration<F> {
    pub fn new(
        field: F,
        shape: FactorShape,
        points: Vec<MultiPoint<F::Elem>>,
    ) -> Result<Self, ConfigError> {
        if points.is_empty() {
            return Err(ConfigError::Empty);
        }
        let mut index = HashMap::with_capacity(points.len());
        for (k, p) in points.iter().enumerate() {
            if p.parts.len() != shape.num_factors() {
                return Err(ConfigError::WrongFactorCount {
                    point: k,
                    expected: shape.num_factors(),
                    got: p.parts.len(),
                });
            }
            for (i, (part, &a)) in p.parts.iter().zip(shape.dims()).enumerate() {
                if part.dim() != a {
                    return Err(ConfigError::CoordinateLength {
                        point: k,
                        factor: i,
                        expected: a + 1,
                        got: part.coords.len(),
                    });
                }
            }
            if let Some(&first) = index.get(p) {
                return Err(ConfigError::DuplicatePoint { point: k, first });
            }
            index.insert(p.clone(), k);
        }
        Ok(Configuration {
            field,
            shape,
            points,
            index,
        })
    }

    /// Builds a configuration from integer coordinates, reduced into `field`.
    pub fn from_integers(
        field: &F,
        dims: &[usize],
        points: &[Vec<Vec<i64>>],
    ) -> Result<Self, ConfigError> {
        let shape = FactorShape::new(dims)?;
        let mut out = Vec::with_capacity(points.len());
        for (k, p) in points.iter().enumerate() {
            if p.len() != dims.len() {
                return Err(ConfigError::WrongFactorCount {
                    point: k,
                    expected: dims.len(),
                    got: p.len(),
                });
            }
            let mut parts = Vec::with_capacity(dims.len());
            for (i, (c, &a)) in p.iter().zip(dims).enumerate() {
                if c.len() != a + 1 {
                    return Err(ConfigError::CoordinateLength {
                        point: k,
                        factor: i,
                        expected: a + 1,
                        got: c.len(),
                    });
                }
                let q = ProjPoint::from_integers(field, c)
                    .ok_or(ConfigError::ZeroPoint { point: k, factor: i })?;
                parts.push(q);
            }
            out.push(MultiPoint::new(parts));
        }
        Configuration::new(field.clone(), shape, out)
    }

    /// Same field and shape, different points.
    pub fn with_points(&self, points: Vec<MultiPoint<F::Elem>>) -> Result<Self, ConfigError> {
        Configuration::new(self.field.clone(), self.shape.clone(), points)
    }

    pub fn subset(&self, indices: &[usize]) -> Result<Self, ConfigError> {
        self.with_points(indices.iter().map(|&k| self.points[k].clone()).collect())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn shape(&self) -> &FactorShape {
        &self.shape
    }

    pub fn dims(&self) -> &[usize] {
        self.shape.dims()
    }

    pub fn num_factors(&self) -> usize {
        self.shape.num_factors()
    }

    pub fn points(&self) -> &[MultiPoint<F::Elem>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &MultiPoint<F::Elem>) -> bool {
        self.index.contains_key(p)
    }

    fn require_factors(&self, n: usize) -> Result<(), ConfigError> {
        if self.num_factors() == n {
            Ok(())
        } else {
            Err(ConfigError::NeedsFactors {
                needed: n,
                got: self.num_factors(),
            })
        }
    }

    /// `η_i(X)`: distinct factor-`i` points, by first occurrence.
    pub fn factor_points(&self, i: usize) -> Result<Vec<ProjPoint<F::Elem>>, ConfigError> {
        self.shape.check_factor(i)?;
        Ok(dedup_in_order(self.points.iter().map(|p| p.parts[i].clone())))
    }

    /// `π_i(X)`: the image with factor `i` omitted.
    pub fn pi(&self, i: usize) -> Result<Configuration<F>, ConfigError> {
        let shape = self.shape.without(i)?;
        let pts = dedup_in_order(self.points.iter().map(|p| p.omit(i)));
        Configuration::new(self.field.clone(), shape, pts)
    }

    pub fn level_sets(&self, i: usize) -> Result<LevelDecomposition<F::Elem>, ConfigError> {
        self.shape.check_factor(i)?;
        let mut classes: Vec<(ProjPoint<F::Elem>, Vec<usize>)> = Vec::new();
        let mut pos: HashMap<&ProjPoint<F::Elem>, usize> = HashMap::new();
        for (k, p) in self.points.iter().enumerate() {
            let key = &p.parts[i];
            match pos.get(key) {
                Some(&c) => classes[c].1.push(k),
                None => {
                    pos.insert(key, classes.len());
                    classes.push((key.clone(), vec![k]));
                }
            }
        }
        Ok(LevelDecomposition { factor: i, classes })
    }

    /// Every pair `(P1,Q1), (P2,Q2)` has `(P1,Q2)` or `(P2,Q1)` in `X`.
    pub fn has_star(&self) -> Result<bool, ConfigError> {
        self.require_factors(2)?;
        for (k, a) in self.points.iter().enumerate() {
            for b in &self.points[k + 1..] {
                let ab = MultiPoint::new(vec![a.parts[0].clone(), b.parts[1].clone()]);
                let ba = MultiPoint::new(vec![b.parts[0].clone(), a.parts[1].clone()]);
                if !self.contains(&ab) && !self.contains(&ba) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Images `π_i(X_j)` of the level sets with respect to factor `i`.
    pub fn level_images(&self, i: usize) -> Result<Vec<Configuration<F>>, ConfigError> {
        let shape = self.shape.without(i)?;
        let levels = self.level_sets(i)?;
        levels
            .classes
            .iter()
            .map(|(_, idx)| {
                let pts = idx.iter().map(|&k| self.points[k].omit(i)).collect();
                Configuration::new(self.field.clone(), shape.clone(), pts)
            })
            .collect()
    }

    /// The level images with respect to factor `i` form a chain under
    /// inclusion (a single level is a chain).
    pub fn level_images_nested(&self, i: usize) -> Result<bool, ConfigError> {
        let images = self.level_images(i)?;
        let mut sets: Vec<HashSet<MultiPoint<F::Elem>>> = images
            .iter()
            .map(|c| c.points.iter().cloned().collect())
            .collect();
        sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
        Ok(sets.windows(2).all(|w| contains_all(&w[0], &w[1])))
    }

    /// Inclusion property with respect to factor `i`. With two factors the
    /// images live in one projective space and are ACM, so `acm` is only
    /// consulted for three or more factors.
    pub fn has_inclusion(
        &self,
        i: usize,
        acm: &mut dyn FnMut(&Configuration<F>) -> bool,
    ) -> Result<bool, ConfigError> {
        if !self.level_images_nested(i)? {
            return Ok(false);
        }
        if self.num_factors() == 2 {
            return Ok(true);
        }
        for image in self.level_images(i)? {
            if !acm(&image) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Corner description of a star configuration.
    ///
    /// Rows are sorted by decreasing fiber size and columns by decreasing
    /// number of rows containing them, ties by first occurrence.
    pub fn staircase(&self) -> Result<Staircase<F::Elem>, ConfigError> {
        if !self.has_star()? {
            return Err(ConfigError::NotStar);
        }
        let rows = self.level_sets(0)?;
        let cols = self.factor_points(1)?;
        let mut height: HashMap<&ProjPoint<F::Elem>, usize> = HashMap::new();
        for p in &self.points {
            *height.entry(&p.parts[1]).or_default() += 1;
        }
        let mut col_order: Vec<usize> = (0..cols.len()).collect();
        col_order.sort_by_key(|&c| std::cmp::Reverse(height[&cols[c]]));
        let col_points: Vec<ProjPoint<F::Elem>> =
            col_order.iter().map(|&c| cols[c].clone()).collect();

        let mut row_order: Vec<usize> = (0..rows.classes.len()).collect();
        row_order.sort_by_key(|&r| std::cmp::Reverse(rows.classes[r].1.len()));
        let row_points: Vec<ProjPoint<F::Elem>> = row_order
            .iter()
            .map(|&r| rows.classes[r].0.clone())
            .collect();
        let lambda: Vec<usize> = row_order
            .iter()
            .map(|&r| rows.classes[r].1.len())
            .collect();

        // each row must be a prefix of the column order
        for (i, row) in row_points.iter().enumerate() {
            for col in &col_points[..lambda[i]] {
                let p = MultiPoint::new(vec![row.clone(), col.clone()]);
                if !self.contains(&p) {
                    return Err(ConfigError::NotStar);
                }
            }
        }
        let mut corners = Vec::new();
        for i in (0..lambda.len()).rev() {
            if i + 1 == lambda.len() || lambda[i] > lambda[i + 1] {
                corners.push((i, lambda[i] - 1));
            }
        }
        Ok(Staircase {
            corners,
            row_points,
            col_points,
        })
    }

    /// The A/B split; requires shape `(1, n)`.
    pub fn ab_partition(&self) -> Result<AbPartition<F::Elem>, ConfigError> {
        if self.num_factors() != 2 || self.dims()[0] != 1 {
            return Err(ConfigError::WrongShape {
                expected: "P^1 x P^n".into(),
                got: self.shape.to_string(),
            });
        }
        let levels = self.level_sets(0)?;
        let ys: Vec<HashSet<&ProjPoint<F::Elem>>> = levels
            .classes
            .iter()
            .map(|(_, idx)| idx.iter().map(|&k| &self.points[k].parts[1]).collect())
            .collect();
        let common = |q: &ProjPoint<F::Elem>| ys.iter().all(|y| y.contains(q));
        let mut a_part = Vec::new();
        let mut b_part = Vec::new();
        for (k, p) in self.points.iter().enumerate() {
            if common(&p.parts[1]) {
                b_part.push(k);
            } else {
                a_part.push(k);
            }
        }
        let a_y = dedup_in_order(a_part.iter().map(|&k| self.points[k].parts[1].clone()));
        let b_y = dedup_in_order(b_part.iter().map(|&k| self.points[k].parts[1].clone()));
        let ab_levels = levels
            .classes
            .iter()
            .map(|(row, idx)| {
                let (b, a): (Vec<usize>, Vec<usize>) =
                    idx.iter().partition(|&&k| common(&self.points[k].parts[1]));
                AbLevel {
                    row: row.clone(),
                    y: idx.iter().map(|&k| self.points[k].parts[1].clone()).collect(),
                    a,
                    b,
                }
            })
            .collect();
        Ok(AbPartition {
            n0: a_y.len(),
            n1: b_y.len(),
            a_part,
            b_part,
            a_y,
            b_y,
            levels: ab_levels,
        })
    }

    /// Second-factor point sets whose Hilbert functions must be generic for
    /// the `P^1 x P^n` criteria: `π_1(X)`, `π_1(A_X)`, `B_Y` and each `Y_i`.
    pub fn genericity_subsets(&self) -> Result<Vec<Vec<ProjPoint<F::Elem>>>, ConfigError> {
        let ab = self.ab_partition()?;
        let mut out = vec![self.factor_points(1)?, ab.a_y.clone(), ab.b_y.clone()];
        out.extend(ab.levels.iter().map(|l| l.y.clone()));
        out.retain(|s| !s.is_empty());
        Ok(out)
    }

    /// Checks the hypotheses of the iff criterion. Genericity is certified
    /// with generic Hilbert functions of [`Self::genericity_subsets`].
    pub fn count_criterion_hypotheses(&self) -> Result<CountCriterionReport, ConfigError> {
        let ab = self.ab_partition()?;
        let b_y: HashSet<&ProjPoint<F::Elem>> = ab.b_y.iter().collect();
        let mut pairwise = true;
        for (u, lu) in ab.levels.iter().enumerate() {
            let yu: HashSet<&ProjPoint<F::Elem>> = lu.y.iter().collect();
            for lv in &ab.levels[u + 1..] {
                if lv.y.iter().any(|q| yu.contains(q) && !b_y.contains(q)) {
                    pairwise = false;
                }
            }
        }
        let subsets = self.genericity_subsets()?;
        let generic = crate::lab::certify_genericity(&self.field, &[], &subsets);
        let inclusion_absent = !self.has_inclusion(0, &mut |_| true)?;
        Ok(CountCriterionReport {
            pairwise_in_b_y: pairwise,
            generic,
            inclusion_absent,
        })
    }

    /// The configuration with the two factors swapped.
    pub fn transposed(&self) -> Result<Configuration<F>, ConfigError> {
        self.require_factors(2)?;
        let shape = FactorShape::new(&[self.dims()[1], self.dims()[0]])?;
        let pts = self
            .points
            .iter()
            .map(|p| MultiPoint::new(vec![p.parts[1].clone(), p.parts[0].clone()]))
            .collect();
        Configuration::new(self.field.clone(), shape, pts)
    }

    /// Applies one invertible matrix per factor to the coordinates.
    pub fn transform(&self, mats: &[Vec<Vec<F::Elem>>]) -> Result<Configuration<F>, ConfigError> {
        if mats.len() != self.num_factors() {
            return Err(ConfigError::InvalidArgument("one matrix per factor".into()));
        }
        let mut pts = Vec::with_capacity(self.len());
        for (k, p) in self.points.iter().enumerate() {
            let mut parts = Vec::with_capacity(p.parts.len());
            for (i, (part, m)) in p.parts.iter().zip(mats).enumerate() {
                let v = mat_vec(&self.field, m, &part.coords);
                parts.push(
                    ProjPoint::new(&self.field, v).ok_or(ConfigError::ZeroPoint { point: k, factor: i })?,
                );
            }
            pts.push(MultiPoint::new(parts));
        }
        Configuration::new(self.field.clone(), self.shape.clone(), pts)
    }

    /// Points printed with signed coordinates, for reports.
    pub fn fmt_point(&self, p: &MultiPoint<F::Elem>) -> String {
        let parts: Vec<String> = p
            .parts
            .iter()
            .map(|q| {
                let c: Vec<String> = q.coords.iter().map(|c| self.field.fmt_coeff(c)).collect();
                format!("[{}]", c.join(","))
            })
            .collect();
        parts.join("x")
    }
}

impl<E: Clone + Eq> Staircase<E> {
    /// `V_k = {P_i : i <= i_k}` (descending) and `Z_k = {Q_j : j <= j_k}`
    /// (ascending).
    #[allow(clippy::type_complexity)]
    pub fn vz_chains(&self) -> (Vec<Vec<ProjPoint<E>>>, Vec<Vec<ProjPoint<E>>>) {
        let v = self
            .corners
            .iter()
            .map(|&(i, _)| self.row_points[..=i].to_vec())
            .collect();
        let z = self
            .corners
            .iter()
            .map(|&(_, j)| self.col_points[..=j].to_vec())
            .collect();
        (v, z)
    }

    /// The point set described by the corners.
    pub fn points(&self) -> Vec<MultiPoint<E>> {
        let mut out = Vec::new();
        for (i, p) in self.row_points.iter().enumerate() {
            for (j, q) in self.col_points.iter().enumerate() {
                if self.corners.iter().any(|&(ik, jk)| i <= ik && j <= jk) {
                    out.push(MultiPoint::new(vec![p.clone(), q.clone()]));
                }
            }
        }
        out
    }
}
