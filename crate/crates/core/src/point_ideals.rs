//! Defining ideals of points and of the unions built from them.

use mpacm_algebra::{Field, Ideal, Poly, Ring};

use crate::config::{Configuration, MultiPoint, ProjPoint, Staircase};
use crate::error::ConfigError;

/// Coordinate ring of the configuration's ambient space.
pub fn ring_of<F: Field>(x: &Configuration<F>) -> Result<Ring<F>, ConfigError> {
    Ok(Ring::new(x.field().clone(), x.dims())?)
}

/// The `a` linear forms of factor `factor` vanishing at `q`:
/// `x_j - c_j x_k` for `j != k`, where `c_k = 1` is the first nonzero
/// coordinate.
pub fn point_forms<F: Field>(ring: &Ring<F>, factor: usize, q: &ProjPoint<F::Elem>) -> Vec<Poly<F::Elem>> {
    let f = ring.field();
    let c = q.coords();
    let k = c.iter().position(|v| !f.is_zero(v)).expect("normalized point");
    (0..c.len())
        .filter(|&j| j != k)
        .map(|j| {
            ring.linear_form(&[
                (ring.var_index(factor, j), f.one()),
                (ring.var_index(factor, k), f.neg(&c[j])),
            ])
        })
        .collect()
}

pub fn point_ideal<F: Field>(ring: &Ring<F>, p: &MultiPoint<F::Elem>) -> Ideal<F> {
    let gens = p
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, q)| point_forms(ring, i, q))
        .collect();
    Ideal::new(ring, gens)
}

/// `I_X`, the intersection of the point ideals.
pub fn config_ideal<F: Field>(x: &Configuration<F>) -> Result<Ideal<F>, ConfigError> {
    config_ideal_in(&ring_of(x)?, x)
}

pub fn config_ideal_in<F: Field>(ring: &Ring<F>, x: &Configuration<F>) -> Result<Ideal<F>, ConfigError> {
    if ring.dims() != x.dims() {
        return Err(ConfigError::WrongShape {
            expected: format!("{:?}", ring.dims()),
            got: x.shape().to_string(),
        });
    }
    let parts: Vec<Ideal<F>> = x.points().iter().map(|p| point_ideal(ring, p)).collect();
    Ok(Ideal::intersection_all(&parts)?)
}

/// Ideal of a set of factor-`factor` points, as a subvariety of the whole
/// product. The empty set gives the unit ideal.
pub fn subset_ideal<F: Field>(
    ring: &Ring<F>,
    factor: usize,
    pts: &[ProjPoint<F::Elem>],
) -> Result<Ideal<F>, ConfigError> {
    if pts.is_empty() {
        return Ok(Ideal::unit(ring));
    }
    let small = Ring::new(ring.field().clone(), &[ring.dims()[factor]])?;
    let parts: Vec<Ideal<F>> = pts
        .iter()
        .map(|q| Ideal::new(&small, point_forms(&small, 0, q)))
        .collect();
    let meet = Ideal::intersection_all(&parts)?;
    let offset = ring.var_index(factor, 0);
    let gens = meet
        .groebner()
        .iter()
        .map(|g| ring.embed_from(&small, g, offset))
        .collect();
    Ok(Ideal::new(ring, gens))
}

/// Ideal in `ring` of a configuration living in factors `1..`.
pub fn trailing_ideal<F: Field>(ring: &Ring<F>, y: &Configuration<F>) -> Result<Ideal<F>, ConfigError> {
    if y.dims() != &ring.dims()[1..] {
        return Err(ConfigError::WrongShape {
            expected: format!("{:?}", &ring.dims()[1..]),
            got: y.shape().to_string(),
        });
    }
    let small = ring_of(y)?;
    let iy = config_ideal_in(&small, y)?;
    let offset = ring.var_index(1, 0);
    let gens = iy
        .groebner()
        .iter()
        .map(|g| ring.embed_from(&small, g, offset))
        .collect();
    Ok(Ideal::new(ring, gens))
}

/// Linear form of `P^1` vanishing at `q = [q0, q1]`: `q1 x0 - q0 x1`.
pub fn level_form<F: Field>(ring: &Ring<F>, q: &ProjPoint<F::Elem>) -> Poly<F::Elem> {
    let f = ring.field();
    let c = q.coords();
    ring.linear_form(&[
        (ring.var_index(0, 0), c[1].clone()),
        (ring.var_index(0, 1), f.neg(&c[0])),
    ])
}

fn require_p1_first<F: Field>(ring: &Ring<F>) -> Result<(), ConfigError> {
    if ring.num_factors() < 2 || ring.dims()[0] != 1 {
        return Err(ConfigError::WrongShape {
            expected: "P^1 x ...".into(),
            got: format!("{:?}", ring.dims()),
        });
    }
    Ok(())
}

/// `I_{Y_1} + L_1 I_{Y_2} + ... + L_1...L_{t-1} I_{Y_t} + (L_1...L_t)` for a
/// chain `Y_1 ⊇ ... ⊇ Y_t` over rows `P_1, ..., P_t` of `P^1`.
pub fn nested_chain_ideal<F: Field>(
    ring: &Ring<F>,
    levels: &[(ProjPoint<F::Elem>, Configuration<F>)],
) -> Result<Ideal<F>, ConfigError> {
    require_p1_first(ring)?;
    if levels.is_empty() {
        return Err(ConfigError::Empty);
    }
    for w in levels.windows(2) {
        if !w[1].1.points().iter().all(|p| w[0].1.contains(p)) {
            return Err(ConfigError::ChainNotNested);
        }
    }
    for (u, (p, _)) in levels.iter().enumerate() {
        if levels[..u].iter().any(|(q, _)| q == p) {
            return Err(ConfigError::InvalidArgument("level rows must be distinct".into()));
        }
    }
    let mut prefix = ring.one();
    let mut gens = Vec::new();
    for (p, y) in levels {
        for g in trailing_ideal(ring, y)?.groebner() {
            gens.push(ring.mul(&prefix, g));
        }
        prefix = ring.mul(&prefix, &level_form(ring, p));
    }
    gens.push(prefix);
    Ok(Ideal::new(ring, gens))
}

/// A level: its first-factor point and the image of its level set.
pub type Level<F> = (ProjPoint<<F as Field>::Elem>, Configuration<F>);

/// Levels of `x` over the first factor, ordered by decreasing image size
/// (ties by first occurrence).
pub fn nested_levels<F: Field>(x: &Configuration<F>) -> Result<Vec<Level<F>>, ConfigError> {
    let rows = x.level_sets(0)?;
    let images = x.level_images(0)?;
    let mut levels: Vec<Level<F>> = rows
        .classes
        .into_iter()
        .map(|(p, _)| p)
        .zip(images)
        .collect();
    levels.sort_by_key(|(_, y)| std::cmp::Reverse(y.len()));
    Ok(levels)
}

/// [`nested_chain_ideal`] assembled from the level sets of `x`.
pub fn nested_chain_ideal_of<F: Field>(x: &Configuration<F>) -> Result<Ideal<F>, ConfigError> {
    nested_chain_ideal(&ring_of(x)?, &nested_levels(x)?)
}

/// `I_{V_1} + I_{V_2} I_{Z_1} + ... + I_{V_t} I_{Z_{t-1}} + I_{Z_t}`.
pub fn staircase_ideal<F: Field>(
    ring: &Ring<F>,
    st: &Staircase<F::Elem>,
) -> Result<Ideal<F>, ConfigError> {
    if ring.num_factors() != 2 {
        return Err(ConfigError::NeedsFactors {
            needed: 2,
            got: ring.num_factors(),
        });
    }
    let (v, z) = st.vz_chains();
    let iv = v
        .iter()
        .map(|s| subset_ideal(ring, 0, s))
        .collect::<Result<Vec<_>, _>>()?;
    let iz = z
        .iter()
        .map(|s| subset_ideal(ring, 1, s))
        .collect::<Result<Vec<_>, _>>()?;
    let t = iv.len();
    let mut acc = iv[0].sum(&iz[t - 1])?;
    for k in 1..t {
        acc = acc.sum(&iv[k].product(&iz[k - 1])?)?;
    }
    Ok(acc)
}

/// One generator written as (product of level forms) times a form in the
/// second factor.
#[derive(Clone, Debug)]
pub struct GeneratorSplit<E> {
    pub generator: Poly<E>,
    pub multidegree: Vec<u32>,
    /// Level indices whose forms were divided out, with multiplicity.
    pub levels: Vec<usize>,
    /// The second-factor cofactor when the split succeeded.
    pub residual: Option<Poly<E>>,
    /// The cofactor lies in the ideal of the second-factor image of the
    /// levels not divided out.
    pub residual_in_projection: bool,
}

#[derive(Clone, Debug)]
pub struct FactorizationReport<E> {
    /// Splits of the engine's minimal generators.
    pub engine: Vec<GeneratorSplit<E>>,
    pub engine_all_split: bool,
    /// A minimal generating set made of split products, when one exists.
    pub factorized: Option<Vec<GeneratorSplit<E>>>,
}

impl<E> FactorizationReport<E> {
    /// A minimal generating set of split products exists, and every split
    /// cofactor vanishes where it should.
    pub fn success(&self) -> bool {
        self.factorized
            .as_ref()
            .is_some_and(|s| s.iter().all(|g| g.residual_in_projection))
            && self
                .engine
                .iter()
                .filter(|g| g.residual.is_some())
                .all(|g| g.residual_in_projection)
    }
}

struct SplitContext<'a, F: Field> {
    ring: &'a Ring<F>,
    x: &'a Configuration<F>,
    rows: Vec<(ProjPoint<F::Elem>, Vec<usize>)>,
    forms: Vec<Poly<F::Elem>>,
}

impl<F: Field> SplitContext<'_, F> {
    /// Second-factor points of the levels outside `used`.
    fn remaining_columns(&self, used: &[usize]) -> Vec<ProjPoint<F::Elem>> {
        let mut out: Vec<ProjPoint<F::Elem>> = Vec::new();
        for (u, (_, idx)) in self.rows.iter().enumerate() {
            if used.contains(&u) {
                continue;
            }
            for &k in idx {
                let q = self.x.points()[k].part(1).clone();
                if !out.contains(&q) {
                    out.push(q);
                }
            }
        }
        out
    }

    /// Divides out level forms until no first-factor degree is left. Level
    /// forms are pairwise coprime irreducibles, so the greedy order does not
    /// affect the outcome.
    fn split(&self, g: &Poly<F::Elem>) -> Result<GeneratorSplit<F::Elem>, ConfigError> {
        let ring = self.ring;
        let multidegree = ring.multidegree(g).ok_or(mpacm_algebra::AlgebraError::NotMultihomogeneous)?;
        let mut cur = g.clone();
        let mut levels = Vec::new();
        'outer: while ring.multidegree(&cur).is_some_and(|d| d[0] > 0) {
            for (u, l) in self.forms.iter().enumerate() {
                if let Some(q) = ring.try_div(&cur, l) {
                    cur = q;
                    levels.push(u);
                    continue 'outer;
                }
            }
            return Ok(GeneratorSplit {
                generator: g.clone(),
                multidegree,
                levels,
                residual: None,
                residual_in_projection: false,
            });
        }
        let cols = self.remaining_columns(&levels);
        let inside = subset_ideal(ring, 1, &cols)?.contains(&cur);
        Ok(GeneratorSplit {
            generator: g.clone(),
            multidegree,
            levels,
            residual: Some(cur),
            residual_in_projection: inside,
        })
    }
}

/// Checks that `I_X` has a minimal generating set of products
/// `F' * F''` with `F'` a product of level forms and `F''` a form in the
/// second factor, for `X` in `P^1 x P^n`.
///
/// The engine's own minimal generators are split greedily and reported. A
/// factorized minimal generating set is then searched among the products
/// `(prod_{u in D} L_u) * G` with `G` a minimal generator of the ideal of the
/// columns outside the levels `D`.
pub fn generator_factorization_check<F: Field>(
    x: &Configuration<F>,
    acm_required: bool,
    seed: u64,
) -> Result<FactorizationReport<F::Elem>, ConfigError> {
    let ring = ring_of(x)?;
    require_p1_first(&ring)?;
    if x.num_factors() != 2 {
        return Err(ConfigError::NeedsFactors {
            needed: 2,
            got: x.num_factors(),
        });
    }
    if acm_required {
        let verdict = crate::acm::acm_decide(x, crate::acm::DEFAULT_TRIALS, seed)?;
        if !verdict.acm {
            return Err(ConfigError::Precondition("configuration is not ACM".into()));
        }
    }
    let rows = x.level_sets(0)?.classes;
    if rows.len() > 12 {
        return Err(ConfigError::InvalidArgument("too many levels for the subset search".into()));
    }
    let forms: Vec<Poly<F::Elem>> = rows.iter().map(|(p, _)| level_form(&ring, p)).collect();
    let ctx = SplitContext {
        ring: &ring,
        x,
        rows,
        forms,
    };
    let ix = config_ideal_in(&ring, x)?;

    let engine = ix
        .minimal_generators()?
        .generators
        .iter()
        .map(|(_, g)| ctx.split(g))
        .collect::<Result<Vec<_>, _>>()?;
    let engine_all_split = engine.iter().all(|g| g.residual.is_some());

    let t = ctx.rows.len();
    let mut candidates = Vec::new();
    for mask in 0u32..(1 << t) {
        let used: Vec<usize> = (0..t).filter(|u| mask & (1 << u) != 0).collect();
        let prefix = ring.product(used.iter().map(|&u| &ctx.forms[u]));
        let cols = ctx.remaining_columns(&used);
        if cols.is_empty() {
            candidates.push(prefix);
            continue;
        }
        let small = Ring::new(ring.field().clone(), &[ring.dims()[1]])?;
        let parts: Vec<Ideal<F>> = cols
            .iter()
            .map(|q| Ideal::new(&small, point_forms(&small, 0, q)))
            .collect();
        let iy = Ideal::intersection_all(&parts)?;
        let offset = ring.var_index(1, 0);
        for (_, g) in iy.minimal_generators()?.generators {
            candidates.push(ring.mul(&prefix, &ring.embed_from(&small, &g, offset)));
        }
    }
    let factorized = match ix.minimal_subset_of(&candidates)? {
        Some(mg) => Some(
            mg.generators
                .iter()
                .map(|(_, g)| ctx.split(g))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    Ok(FactorizationReport {
        engine,
        engine_all_split,
        factorized,
    })
}
