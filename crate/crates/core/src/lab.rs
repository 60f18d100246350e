//! Random generators with genericity certification, verification suites and
//! counterexample scans. Every outcome is a pure function of the seed.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mpacm_algebra::hilbert::{binomial, is_generic_hf};
use mpacm_algebra::{Field, Ideal, Poly, PrimeField, Rationals, Ring};

use crate::acm::{acm_decide, acm_fast_paths, point_addition_saturation_claim, SaturationInstance, DEFAULT_TRIALS};
use crate::config::{d_membership, Configuration, IntConfig, MultiPoint, ProjPoint};
use crate::error::ConfigError;
use crate::point_ideals::{
    nested_chain_ideal_of, config_ideal, generator_factorization_check, point_ideal, ring_of, staircase_ideal,
};

/// Attempts a generator makes before giving up.
pub const RETRY_CAP: usize = 32;
pub const DEFAULT_MAX_POINTS: usize = 12;
pub const DEFAULT_MAX_VARS: usize = 9;
pub const DEFAULT_SEED: u64 = 0;
/// Affine coordinates of random points are drawn from `-COORD_RANGE..=COORD_RANGE`.
const COORD_RANGE: i64 = 9;

/// `true` iff every listed set has pairwise distinct points and a generic
/// Hilbert function.
pub fn certify_genericity<F: Field>(
    field: &F,
    points: &[ProjPoint<F::Elem>],
    extra_subsets: &[Vec<ProjPoint<F::Elem>>],
) -> bool {
    std::iter::once(points)
        .chain(extra_subsets.iter().map(Vec::as_slice))
        .all(|s| {
            let distinct: HashSet<&ProjPoint<F::Elem>> = s.iter().collect();
            if distinct.len() != s.len() {
                return false;
            }
            if s.is_empty() {
                return true;
            }
            let coords: Vec<Vec<F::Elem>> = s.iter().map(|p| p.coords().to_vec()).collect();
            is_generic_hf(field, &coords).unwrap_or(false)
        })
}

/// Certifies the second-factor sets used by the `P^1 x P^n` criteria.
pub fn certify_configuration<F: Field>(x: &Configuration<F>) -> Result<bool, ConfigError> {
    Ok(certify_genericity(x.field(), &x.factor_points(1)?, &x.genericity_subsets()?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// `points` random points drawn from small pools in each factor, so
    /// projections collide.
    Random { points: usize },
    /// Two factors; the union of rectangles below a partition `lambda`
    /// (row `i` holds `lambda[i]` points). Random when `None`.
    Star { lambda: Option<Vec<usize>> },
    /// `levels` level sets over the first factor with nested images, each a
    /// star configuration when two factors remain.
    Inclusion { levels: usize },
    /// `P^1 x P^n` with `levels` rows, `n1` columns common to all rows and
    /// `n0` further columns, each used by some but not all rows.
    Ab {
        n0: usize,
        n1: usize,
        levels: usize,
        intersect_allowed: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub dims: Vec<usize>,
    pub pattern: Pattern,
    pub max_points: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(dims: &[usize], pattern: Pattern, seed: u64) -> Self {
        GenSpec {
            dims: dims.to_vec(),
            pattern,
            max_points: DEFAULT_MAX_POINTS,
            seed,
        }
    }

    pub fn with_max_points(mut self, max_points: usize) -> Self {
        self.max_points = max_points;
        self
    }
}

fn random_point(rng: &mut ChaCha8Rng, a: usize) -> Vec<i64> {
    std::iter::once(1)
        .chain((0..a).map(|_| rng.random_range(-COORD_RANGE..=COORD_RANGE)))
        .collect()
}

fn distinct_points(rng: &mut ChaCha8Rng, a: usize, k: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::with_capacity(k);
    while out.len() < k {
        let p = random_point(rng, a);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Nonincreasing positive parts, at most four of them, each at most four,
/// summing to at most `budget`.
fn random_partition(rng: &mut ChaCha8Rng, budget: usize) -> Vec<usize> {
    let budget = budget.max(1);
    loop {
        let u = rng.random_range(1..=budget.min(4));
        let mut parts: Vec<usize> = (0..u).map(|_| rng.random_range(1..=budget.min(4))).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        if parts.iter().sum::<usize>() <= budget {
            return parts;
        }
    }
}

/// Removes up to two corner cells, keeping at least one cell.
fn shrink_partition(rng: &mut ChaCha8Rng, lambda: &[usize]) -> Vec<usize> {
    let mut out = lambda.to_vec();
    for _ in 0..rng.random_range(0..=2) {
        if out.iter().sum::<usize>() <= 1 {
            break;
        }
        let corners: Vec<usize> = (0..out.len())
            .filter(|&j| j + 1 == out.len() || out[j] > out[j + 1])
            .collect();
        let j = corners[rng.random_range(0..corners.len())];
        out[j] -= 1;
        if out[j] == 0 {
            out.pop();
        }
    }
    out
}

fn check_partition(lambda: &[usize]) -> Result<(), ConfigError> {
    if lambda.is_empty() || lambda.contains(&0) || lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(ConfigError::InvalidArgument(format!(
            "{lambda:?} is not a nonincreasing list of positive parts"
        )));
    }
    Ok(())
}

fn over_budget(points: usize, max: usize) -> ConfigError {
    ConfigError::InvalidArgument(format!("pattern needs {points} points, budget is {max}"))
}

/// Points of a staircase on pools of row and column points.
fn staircase_points(lambda: &[usize], rows: &[Vec<i64>], cols: &[Vec<i64>]) -> Vec<Vec<Vec<i64>>> {
    let mut pts = Vec::new();
    for (i, &l) in lambda.iter().enumerate() {
        for col in &cols[..l] {
            pts.push(vec![rows[i].clone(), col.clone()]);
        }
    }
    pts
}

/// Deterministic configuration generator.
pub fn generate(spec: &GenSpec) -> Result<IntConfig, ConfigError> {
    let dims = &spec.dims;
    crate::config::FactorShape::new(dims)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut points = match &spec.pattern {
        Pattern::Random { points } => gen_random(&mut rng, dims, *points, spec.max_points)?,
        Pattern::Star { lambda } => gen_star(&mut rng, dims, lambda.as_deref(), spec.max_points)?,
        Pattern::Inclusion { levels } => gen_inclusion(&mut rng, dims, *levels, spec.max_points)?,
        Pattern::Ab {
            n0,
            n1,
            levels,
            intersect_allowed,
        } => return gen_ab(&mut rng, dims, *n0, *n1, *levels, *intersect_allowed, spec.max_points),
    };
    points.shuffle(&mut rng);
    Ok(IntConfig {
        dims: dims.clone(),
        points,
    })
}

fn gen_random(
    rng: &mut ChaCha8Rng,
    dims: &[usize],
    count: usize,
    max: usize,
) -> Result<Vec<Vec<Vec<i64>>>, ConfigError> {
    if count == 0 || count > max {
        return Err(over_budget(count, max));
    }
    let mut sizes: Vec<usize> = dims.iter().map(|_| rng.random_range(1..=4)).collect();
    while sizes.iter().product::<usize>() < count {
        let k = (0..sizes.len()).min_by_key(|&k| sizes[k]).unwrap_or(0);
        sizes[k] += 1;
    }
    let pools: Vec<Vec<Vec<i64>>> = dims
        .iter()
        .zip(&sizes)
        .map(|(&a, &k)| distinct_points(rng, a, k))
        .collect();
    let total: usize = sizes.iter().product();
    let mut cells: Vec<usize> = (0..total).collect();
    cells.shuffle(rng);
    Ok(cells[..count]
        .iter()
        .map(|&c| {
            let mut rest = c;
            pools
                .iter()
                .map(|pool| {
                    let p = pool[rest % pool.len()].clone();
                    rest /= pool.len();
                    p
                })
                .collect()
        })
        .collect())
}

fn gen_star(
    rng: &mut ChaCha8Rng,
    dims: &[usize],
    lambda: Option<&[usize]>,
    max: usize,
) -> Result<Vec<Vec<Vec<i64>>>, ConfigError> {
    if dims.len() != 2 {
        return Err(ConfigError::NeedsFactors {
            needed: 2,
            got: dims.len(),
        });
    }
    let lambda = match lambda {
        Some(l) => l.to_vec(),
        None => random_partition(rng, max),
    };
    check_partition(&lambda)?;
    let total: usize = lambda.iter().sum();
    if total > max {
        return Err(over_budget(total, max));
    }
    let rows = distinct_points(rng, dims[0], lambda.len());
    let cols = distinct_points(rng, dims[1], lambda[0]);
    Ok(staircase_points(&lambda, &rows, &cols))
}

fn gen_inclusion(
    rng: &mut ChaCha8Rng,
    dims: &[usize],
    levels: usize,
    max: usize,
) -> Result<Vec<Vec<Vec<i64>>>, ConfigError> {
    if levels == 0 || levels > max {
        return Err(over_budget(levels, max));
    }
    let rows = distinct_points(rng, dims[0], levels);
    let per_level = max / levels;
    // images of the levels, largest first
    let images: Vec<Vec<Vec<Vec<i64>>>> = match &dims[1..] {
        [b] => {
            let mut sizes: Vec<usize> = (0..levels).map(|_| rng.random_range(1..=per_level.min(4))).collect();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            let pool = distinct_points(rng, *b, sizes[0]);
            sizes.iter().map(|&k| pool[..k].iter().map(|q| vec![q.clone()]).collect()).collect()
        }
        [b, c] => {
            let mut lambdas = vec![random_partition(rng, per_level)];
            for _ in 1..levels {
                let next = shrink_partition(rng, lambdas.last().expect("nonempty"));
                lambdas.push(next);
            }
            let prow = distinct_points(rng, *b, lambdas[0].len());
            let pcol = distinct_points(rng, *c, lambdas[0][0]);
            lambdas.iter().map(|l| staircase_points(l, &prow, &pcol)).collect()
        }
        _ => {
            return Err(ConfigError::InvalidArgument(
                "inclusion pattern supports two or three factors".into(),
            ))
        }
    };
    let mut order: Vec<usize> = (0..levels).collect();
    order.shuffle(rng);
    let mut pts = Vec::new();
    for (u, image) in order.into_iter().zip(&images) {
        for rest in image {
            let mut p = vec![rows[u].clone()];
            p.extend(rest.iter().cloned());
            pts.push(p);
        }
    }
    Ok(pts)
}

/// Two rows whose A-parts are not comparable under inclusion.
fn has_incomparable_rows(rows: &[Vec<usize>]) -> bool {
    rows.iter().enumerate().any(|(i, a)| {
        rows[i + 1..]
            .iter()
            .any(|b| a.iter().any(|c| !b.contains(c)) && b.iter().any(|c| !a.contains(c)))
    })
}

/// Assigns A-columns to rows: every row gets one and every column is used
/// by at least one but not all rows.
fn assign_columns(rng: &mut ChaCha8Rng, n0: usize, t: usize, intersect: bool, budget: usize) -> Vec<Vec<usize>> {
    let mut cols: Vec<usize> = (0..n0).collect();
    cols.shuffle(rng);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); t];
    for (k, &c) in cols.iter().enumerate() {
        if k < t {
            rows[k].push(c);
        } else {
            rows[rng.random_range(0..t)].push(c);
        }
    }
    for row in rows.iter_mut().skip(n0) {
        row.push(cols[rng.random_range(0..n0)]);
    }
    if intersect {
        let mut used: usize = rows.iter().map(Vec::len).sum();
        for c in 0..n0 {
            let holders = rows.iter().filter(|r| r.contains(&c)).count();
            if used < budget && holders + 1 < t && rng.random_bool(0.5) {
                let free: Vec<usize> = (0..t).filter(|&u| !rows[u].contains(&c)).collect();
                rows[free[rng.random_range(0..free.len())]].push(c);
                used += 1;
            }
        }
    }
    rows
}

fn gen_ab(
    rng: &mut ChaCha8Rng,
    dims: &[usize],
    n0: usize,
    n1: usize,
    t: usize,
    intersect: bool,
    max: usize,
) -> Result<IntConfig, ConfigError> {
    if dims.len() != 2 || dims[0] != 1 {
        return Err(ConfigError::WrongShape {
            expected: "P^1 x P^n".into(),
            got: format!("{dims:?}"),
        });
    }
    if t < 2 || n0 < 2 {
        return Err(ConfigError::InvalidArgument("ab pattern needs at least 2 rows and n0 >= 2".into()));
    }
    if !intersect && n0 < t {
        return Err(ConfigError::InvalidArgument(
            "disjoint A-columns need at least as many columns as rows".into(),
        ));
    }
    let least = n0.max(t) + t * n1;
    if least > max {
        return Err(over_budget(least, max));
    }
    let field = PrimeField::default();
    for _ in 0..RETRY_CAP {
        let rows = assign_columns(rng, n0, t, intersect, max - t * n1);
        if !has_incomparable_rows(&rows) {
            continue;
        }
        let row_pts = distinct_points(rng, 1, t);
        let col_pts = distinct_points(rng, dims[1], n0 + n1);
        let mut points = Vec::new();
        for (u, a) in rows.iter().enumerate() {
            for &c in a.iter().chain(&(n0..n0 + n1).collect::<Vec<_>>()) {
                points.push(vec![row_pts[u].clone(), col_pts[c].clone()]);
            }
        }
        points.shuffle(rng);
        let ic = IntConfig {
            dims: dims.to_vec(),
            points,
        };
        if certify_configuration(&ic.realize(&field)?)? {
            return Ok(ic);
        }
    }
    Err(ConfigError::RetryExhausted { attempts: RETRY_CAP })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseFailure {
    pub suite: String,
    pub case: usize,
    pub seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseOutcome {
    Pass(String),
    Fail(String),
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<CaseFailure>,
    /// Summaries of passing cases, in case order.
    pub summaries: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            cases: 0,
            passed: 0,
            failed: 0,
            failures: Vec::new(),
            summaries: Vec::new(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    fn record(&mut self, suite: &str, case: usize, seed: u64, outcome: CaseOutcome) {
        self.cases += 1;
        match outcome {
            CaseOutcome::Pass(summary) => {
                self.passed += 1;
                self.summaries.push(summary);
            }
            CaseOutcome::Fail(detail) => {
                self.failed += 1;
                self.failures.push(CaseFailure {
                    suite: suite.to_string(),
                    case,
                    seed,
                    detail,
                });
            }
        }
    }
}

/// Seed of case `case` of a run seeded with `seed`.
pub fn case_seed(seed: u64, case: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng.next_u64()
}

pub const SUITES: &[&str] = &[
    "lemma-3.4",
    "prop-3.2",
    "thm-decomposition",
    "thm-star-acm",
    "lemma-4.5",
    "thm-4.7",
    "thm-4.8",
    "thm-4.8-claim",
    "examples",
    "p1xp1",
    "engine",
];

pub const CONJECTURES: &[&str] = &["conj-3.9", "conj-4.10"];

/// Runs one case of a suite or scan. Errors inside the case are failures.
pub fn replay(suite: &str, case: usize, seed: u64) -> Result<CaseOutcome, ConfigError> {
    let out = match suite {
        "lemma-3.4" => case_star_vs_inclusion(case, seed),
        "prop-3.2" => case_nested_chain(case, seed),
        "thm-decomposition" => case_decomposition(case, seed),
        "thm-star-acm" => case_star_acm(case, seed),
        "lemma-4.5" => case_factorization(case, seed),
        "thm-4.7" => case_disjoint_columns(case, seed),
        "thm-4.8" => case_shared_columns(case, seed),
        "thm-4.8-claim" => case_saturation_claim(case, seed),
        "examples" => case_examples(case),
        "p1xp1" => case_p1xp1(case, seed),
        "engine" => case_engine(case, seed),
        "conj-3.9" => case_inclusion_scan(case, seed),
        "conj-4.10" => case_converse_scan(case, seed),
        other => return Err(ConfigError::InvalidArgument(format!("unknown suite {other}"))),
    };
    Ok(out.unwrap_or_else(|e| CaseOutcome::Fail(format!("error: {e}"))))
}

fn run_cases(report: &mut SuiteReport, suite: &str, cases: usize, seed: u64) -> Result<(), ConfigError> {
    for case in 0..cases {
        let cs = case_seed(seed, case);
        let outcome = replay(suite, case, cs)?;
        report.record(suite, case, cs, outcome);
    }
    Ok(())
}

/// Runs `cases` cases of a suite. `examples` always runs its three cases;
/// `thm-4.8` adds `ceil(cases / 3)` saturation-claim cases.
pub fn verify(suite: &str, cases: usize, seed: u64) -> Result<SuiteReport, ConfigError> {
    if !SUITES.contains(&suite) {
        return Err(ConfigError::InvalidArgument(format!("unknown suite {suite}")));
    }
    let start = Instant::now();
    let mut report = SuiteReport::new(suite, seed);
    match suite {
        "examples" => run_cases(&mut report, suite, 3, seed)?,
        "thm-4.8" => {
            run_cases(&mut report, suite, cases, seed)?;
            let claims = cases.div_ceil(3);
            run_cases(&mut report, "thm-4.8-claim", claims, seed)?;
            report.notes.push(format!("{claims} saturation-claim cases"));
        }
        _ => run_cases(&mut report, suite, cases, seed)?,
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Searches for counterexamples; each failure is a candidate that survived
/// the exact-rational recheck.
pub fn scan(conjecture: &str, budget: usize, seed: u64) -> Result<SuiteReport, ConfigError> {
    if !CONJECTURES.contains(&conjecture) {
        return Err(ConfigError::InvalidArgument(format!("unknown conjecture {conjecture}")));
    }
    let start = Instant::now();
    let mut report = SuiteReport::new(conjecture, seed);
    run_cases(&mut report, conjecture, budget, seed)?;
    report.elapsed = start.elapsed();
    Ok(report)
}

fn pass(msg: impl Into<String>) -> Result<CaseOutcome, ConfigError> {
    Ok(CaseOutcome::Pass(msg.into()))
}

fn fail(msg: impl Into<String>) -> Result<CaseOutcome, ConfigError> {
    Ok(CaseOutcome::Fail(msg.into()))
}

fn realize(ic: &IntConfig) -> Result<Configuration<PrimeField>, ConfigError> {
    ic.realize(&PrimeField::default())
}

fn two_factor_dims(rng: &mut ChaCha8Rng) -> Vec<usize> {
    vec![rng.random_range(1..=3), rng.random_range(1..=3)]
}

fn case_star_vs_inclusion(case: usize, seed: u64) -> Result<CaseOutcome, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = two_factor_dims(&mut rng);
    let pattern = if case.is_multiple_of(2) {
        Pattern::Random {
            points: rng.random_range(1..=10),
        }
    } else {
        Pattern::Star { lambda: None }
    };
    let x = realize(&generate(&GenSpec::new(&dims, pattern, rng.next_u64()).with_max_points(10))?)?;
    let star = x.has_star()?;
    let inc0 = x.has_inclusion(0, &mut |_| true)?;
    let inc1 = x.has_inclusion(1, &mut |_| true)?;
    if star == inc0 && star == inc1 {
        pass(format!("star={star}"))
    } else {
        fail(format!("star={star} inclusion=({inc0},{inc1})"))
    }
}

fn case_nested_chain(case: usize, seed: u64) -> Result<CaseOutcome, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims: &[usize] = if case.is_multiple_of(2) { &[1, 2] } else { &[1, 1, 2] };
    let levels = rng.random_range(2..=4);
    let x = realize(&generate(
        &GenSpec::new(dims, Pattern::Inclusion { levels }, rng.next_u64()).with_max_points(10),
    )?)?;
    let same = nested_chain_ideal_of(&x)? == config_ideal(&x)?;
    let acm = acm_decide(&x, DEFAULT_TRIALS, rng.next_u64())?.acm;
    if same && acm {
        pass(format!("{} points", x.len()))
    } else {
        fail(format!("linkage ideal equal={same} acm={acm}"))
    }
}

fn star_case_config(seed: u64) -> Result<Configuration<PrimeField>, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = two_factor_dims(&mut rng);
    realize(&generate(
        &GenSpec::new(&dims, Pattern::Star { lambda: None }, rng.next_u64()).with_max_points(10),
    )?)
}

fn case_decomposition(_case: usize, seed: u64) -> Result<CaseOutcome, ConfigError> {
    let x = star_case_config(seed)?;
    let ring = ring_of(&x)?;
    if staircase_ideal(&ring, &x.staircase()?)? == config_ideal(&x)? {
        pass(format!("{} points", x.len()))
    } else {
        fail("staircase ideal differs from the ideal of the points")
    }
}

fn case_star_acm(_case: usize, seed: u64) -> Result<CaseOutcome, ConfigError> {
    let x = star_case_config(seed)?;
    if acm_decide(&x, DEFAULT_TRIALS, seed)?.acm {
        pass(format!("{} points", x.len()))
    } else {
        fail("star configuration reported not ACM")
    }
}

/// `(n, n0, n1)` with `t` rows whose point count fits the budget, filtered
/// by membership of `n1` in the admissible set.
fn ab_parameters(t: usize, member: bool, intersect: bool, min_n1: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 2..=3usize {
        for n0 in 2..=3usize {
            if !intersect && n0 < t {
                continue;
            }
            for n1 in min_n1..=DEFAULT_MAX_POINTS {
                if n0.max(t) + t * n1 > DEFAULT_MAX_POINTS {
                    break;
                }
                let d = d_membership(n0 as u64, n1 as u64, n as u64).map(|d| d.member);
                if d == Ok(member) {
                    out.push((n, n0, n1));
                }
            }
        }
    }
    out
}

fn case_factorization(case: usize, seed: u64) -> Result<CaseOutcome, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ic = match case % 3 {
        0 => {
            let dims = [1, rng.random_range(1..=2)];
            generate(&GenSpec::new(&dims, Pattern::Star { lambda: None }, rng.next_u64()).with_max_points(8))?
        }
        1 => {
            let dims = [1, rng.random_range(1..=2)];
            let levels = rng.random_range(2..=3);
            generate(&GenSpec::new(&dims, Pattern::Inclusion { levels }, rng.next_u64()).with_max_points(10))?
        }
        _ => {
            let opts: Vec<_> = ab_parameters(2, true, false, 1).into_iter().filter(|p| p.0 == 2).collect();
            let (n, n0, n1) = opts[rng.random_range(0..opts.len())];
            let pattern = Pattern::Ab {
                n0,
                n1,
                levels: 2,
                intersect_allowed: false,
            };
            generate(&GenSpec::new(&[1, n], pattern, rng.next_u64()))?
        }
    };
    let x = realize(&ic)?;
    let report = generator_factorization_check(&x, true, rng.next_u64())?;
    if report.success() {
        pass(format!("engine generators split: {}", report.engine_all_split))
    } else {
        fail("no factorized minimal generating set")
    }
}

fn case_disjoint_columns(case: usize, seed: u64) -> Result<CaseOutcome, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = rng.random_range(2..=3);
    let member = case.is_multiple_of(2);
    let opts = ab_parameters(t, member, false, 0);
    let (n, n0, n1) = opts[rng.random_range(0..opts.len())];
    let pattern = Pattern::Ab {
        n0,
        n1,
        levels: t,
        intersect_allowed: false,
    };
    let x = realize(&generate(&GenSpec::new(&[1, n], pattern, rng.next_u64()))?)?;
    let hyp = x.count_criterion_hypotheses()?;
    if !hyp.applies() {
        return fail(format!("hypotheses not certified: {hyp:?}"));
    }
    let acm = acm_decide(&x, DEFAULT_TRIALS, rng.next_u64())?.acm;
    let summary = format!("n={n} t={t} n0={n0} n1={n1} member={member} acm={acm}");
    if acm == member {
        pass(summary)
    } else {
        fail(summary)
    }
}

fn case_shared_columns(_case: usize, seed: u64) -> Result<CaseOutcome, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = rng.random_range(3..=4);
    let opts = ab_parameters(t, true, true, 1);
    let (n, n0, n1) = opts[rng.random_range(0..opts.len())];
    let pattern = Pattern::Ab {
        n0,
        n1,
        levels: t,
        intersect_allowed: true,
    };
    let x = realize(&generate(&GenSpec::new(&[1, n], pattern, rng.next_u64()))?)?;
    if !certify_configuration(&x)? {
        return fail("genericity not certified");
    }
    let acm = acm_decide(&x, DEFAULT_TRIALS, rng.next_u64())?.acm;
    let fast = acm_fast_paths(&x, seed)?;
    let summary = format!("n={n} t={t} n0={n0} n1={n1} acm={acm} fast-path={fast:?}");
    if acm && fast.is_none_or(|p| p.verdict()) {
        pass(summary)
    } else {
        fail(summary)
    }
}

/// An ACM `X'` with shared columns allowed, and a point completing an
/// A-column into a row that misses it.
pub fn saturation_instance(seed: u64) -> Result<SaturationInstance<PrimeField>, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts: Vec<_> = ab_parameters(3, true, true, 1).into_iter().filter(|p| p.0 == 2).collect();
    let (n, n0, n1) = opts[rng.random_range(0..opts.len())];
    let pattern = Pattern::Ab {
        n0,
        n1,
        levels: 3,
        intersect_allowed: true,
    };
    let x = realize(&generate(&GenSpec::new(&[1, n], pattern, rng.next_u64()))?)?;
    let ab = x.ab_partition()?;
    let mut choices = Vec::new();
    for q in &ab.a_y {
        for level in &ab.levels {
            if !level.y.contains(q) {
                choices.push(MultiPoint::new(vec![level.row.clone(), q.clone()]));
            }
        }
    }
    let point = choices[rng.random_range(0..choices.len())].clone();
    Ok(SaturationInstance { x_prime: x, point })
}

fn case_saturation_claim(_case: usize, seed: u64) -> Result<CaseOutcome, ConfigError> {
    let inst = saturation_instance(seed)?;
    let rep = point_addition_saturation_claim(&inst, seed)?;
    let summary = format!("r={} s={} sum-saturated={}", rep.r, rep.s, rep.sum_saturated);
    if rep.holds {
        pass(summary)
    } else {
        fail(summary)
    }
}

/// Second-factor points used by the worked examples: the coordinate points,
/// `[1,1,1]` and `[1,2,3]`.
pub const EXAMPLE_COLUMNS: [[i64; 3]; 5] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]];

/// Points `[1,i] x Q_j` for the listed `(i, j)`, 1-based.
pub fn example_configuration(cells: &[(i64, usize)]) -> IntConfig {
    IntConfig {
        dims: vec![1, 2],
        points: cells
            .iter()
            .map(|&(i, j)| vec![vec![1, i], EXAMPLE_COLUMNS[j - 1].to_vec()])
            .collect(),
    }
}

/// Four points without the star property that are ACM.
pub fn four_point_example() -> IntConfig {
    example_configuration(&[(1, 1), (2, 2), (1, 3), (2, 3)])
}

/// Six points with two common columns; not ACM.
pub fn six_point_example() -> IntConfig {
    example_configuration(&[(1, 1), (2, 2), (1, 3), (2, 3), (1, 4), (2, 4)])
}

/// The six-point example with a third common column; ACM.
pub fn eight_point_example() -> IntConfig {
    example_configuration(&[(1, 1), (2, 2), (1, 3), (2, 3), (1, 4), (2, 4), (1, 5), (2, 5)])
}

/// Members of the admissible set for `n0`, `n` among `0..=upto`.
pub fn admissible_table(n0: u64, n: u64, upto: u64) -> Result<Vec<u64>, ConfigError> {
    let mut out = Vec::new();
    for n1 in 0..=upto {
        if d_membership(n0, n1, n)?.member {
            out.push(n1);
        }
    }
    Ok(out)
}

/// The admissible values of `n1 <= 35` for `n0 = 4`, `n = 2`.
pub const ADMISSIBLE_N0_4: [u64; 15] = [6, 10, 11, 15, 16, 17, 21, 22, 23, 24, 28, 29, 30, 31, 32];

/// Same set from the block description: in each block
/// `C(k,2), ..., C(k+1,2) - 1` with `k >= 4`, all but the last three values.
fn admissible_by_blocks(upto: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for k in 4u64.. {
        let lo = binomial(k, 2) as u64;
        if lo > upto {
            break;
        }
        let hi = binomial(k + 1, 2) as u64 - 1;
        out.extend((lo..=hi.saturating_sub(3)).filter(|&v| v <= upto));
    }
    out
}

fn case_examples(case: usize) -> Result<CaseOutcome, ConfigError> {
    let field = PrimeField::default();
    match case {
        0 => {
            let x = realize(&four_point_example())?;
            let generic = certify_configuration(&x)?;
            let star = x.has_star()?;
            let v = acm_decide(&x, DEFAULT_TRIALS, 0)?;
            let witness_ok = match &v.certificate {
                crate::acm::Certificate::RegularSequence { forms } => crate::acm::verify_witness(&x, forms)?,
                _ => false,
            };
            let summary = format!("generic={generic} star={star} acm={} witness={witness_ok}", v.acm);
            if generic && !star && v.acm && witness_ok {
                pass(summary)
            } else {
                fail(summary)
            }
        }
        1 => {
            let x6 = realize(&six_point_example())?;
            let x8 = realize(&eight_point_example())?;
            let generic = certify_genericity(&field, &x8.factor_points(1)?, &[]);
            let v6 = acm_decide(&x6, DEFAULT_TRIALS, 1)?;
            let v8 = acm_decide(&x8, DEFAULT_TRIALS, 1)?;
            let summary = format!("generic={generic} six-point acm={} eight-point acm={}", v6.acm, v8.acm);
            if generic && !v6.acm && v8.acm {
                pass(summary)
            } else {
                fail(summary)
            }
        }
        2 => {
            let table = admissible_table(4, 2, 35)?;
            if table == ADMISSIBLE_N0_4 && table == admissible_by_blocks(35) {
                pass(format!("{table:?}"))
            } else {
                fail(format!("{table:?}"))
            }
        }
        _ => Err(ConfigError::InvalidArgument(format!("examples has 3 cases, got case {case}"))),
    }
}

fn case_p1xp1(case: usize, seed: u64) -> Result<CaseOutcome, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pattern = if case.is_multiple_of(2) {
        Pattern::Random {
            points: rng.random_range(1..=9),
        }
    } else {
        Pattern::Star { lambda: None }
    };
    let x = realize(&generate(&GenSpec::new(&[1, 1], pattern, rng.next_u64()).with_max_points(9))?)?;
    let star = x.has_star()?;
    let acm = acm_decide(&x, DEFAULT_TRIALS, rng.next_u64())?.acm;
    let summary = format!("{} points star={star} acm={acm}", x.len());
    if star == acm {
        pass(summary)
    } else {
        fail(summary)
    }
}

fn random_form<F: Field>(ring: &Ring<F>, rng: &mut ChaCha8Rng, d: &[u32], terms: usize) -> Poly<F::Elem> {
    let monos = ring.monomials_of_multidegree(d);
    let f = ring.field();
    ring.from_terms(
        (0..terms)
            .map(|_| (monos[rng.random_range(0..monos.len())], f.from_i64(rng.random_range(-5..=5))))
            .collect(),
    )
}

fn case_engine(_case: usize, seed: u64) -> Result<CaseOutcome, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = PrimeField::default();
    let dims = [1usize, rng.random_range(1..=2)];
    let ring = Ring::new(field, &dims)?;
    let mut problems = Vec::new();

    let mut gens: Vec<Poly<u32>> = (0..4)
        .map(|k| random_form(&ring, &mut rng, &[1 + (k % 2), 1], 3))
        .collect();
    let gb = ring.groebner_basis(&gens);
    gens.shuffle(&mut rng);
    let scaled: Vec<_> = gens.iter().map(|g| ring.scale(g, &field.from_i64(-3))).collect();
    if ring.groebner_basis(&scaled) != gb || !ring.is_groebner_basis(&gb) {
        problems.push("reduced basis depends on generator order");
    }

    let ic = generate(&GenSpec::new(
        &dims,
        Pattern::Random {
            points: rng.random_range(1..=5),
        },
        rng.next_u64(),
    ))?;
    let x = realize(&ic)?;
    let ix = config_ideal(&x)?;
    let mut samples = vec![random_form(&ring, &mut rng, &[1, 1], 3)];
    let product = x.points().iter().fold(ring.one(), |acc, p| {
        let gens = point_ideal(&ring, p).generators().to_vec();
        ring.mul(&acc, &gens[rng.random_range(0..gens.len())])
    });
    samples.push(product);
    for f in &samples {
        let vanishes = x
            .points()
            .iter()
            .all(|p| field.is_zero(&ring.evaluate(f, &p.flat_coords())));
        if ix.contains(f) != vanishes {
            problems.push("membership disagrees with vanishing");
        }
    }

    let i = Ideal::new(&ring, (0..2).map(|_| random_form(&ring, &mut rng, &[1, 1], 2)).collect());
    let sat = i.saturation_irrelevant();
    if sat.saturation_irrelevant() != sat || !sat.contains_ideal(&i) {
        problems.push("saturation is not idempotent");
    }

    let zero = Ideal::zero(&ring);
    for d0 in 0..=4u32 {
        for d1 in 0..=4u32 {
            let expected = binomial(u64::from(d0) + dims[0] as u64, dims[0] as u64)
                * binomial(u64::from(d1) + dims[1] as u64, dims[1] as u64);
            if zero.hilbert_multi(&[d0, d1])? as u128 != expected {
                problems.push("Hilbert function of the ring");
            }
        }
    }
    if problems.is_empty() {
        pass("engine checks hold")
    } else {
        problems.dedup();
        fail(problems.join("; "))
    }
}

fn within_variable_cap(dims: &[usize]) -> Result<(), ConfigError> {
    let vars = crate::config::FactorShape::new(dims)?.num_vars();
    if vars > DEFAULT_MAX_VARS {
        return Err(ConfigError::InvalidArgument(format!("{vars} variables exceed the cap")));
    }
    Ok(())
}

/// Shapes with a level factor of dimension at least two.
const INCLUSION_SCAN_SHAPES: [[usize; 3]; 3] = [[2, 1, 1], [2, 1, 2], [3, 1, 1]];

fn recheck_rational<T>(ic: &IntConfig, check: impl Fn(&Configuration<Rationals>) -> Result<T, ConfigError>) -> Result<T, ConfigError> {
    check(&ic.realize(&Rationals::default())?)
}

fn case_inclusion_scan(case: usize, seed: u64) -> Result<CaseOutcome, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = INCLUSION_SCAN_SHAPES[case % INCLUSION_SCAN_SHAPES.len()];
    within_variable_cap(&dims)?;
    let levels = rng.random_range(2..=3);
    let ic = generate(&GenSpec::new(&dims, Pattern::Inclusion { levels }, rng.next_u64()))?;
    let acm_seed = rng.next_u64();
    let x = realize(&ic)?;
    let mut oracle = |y: &Configuration<PrimeField>| acm_decide(y, DEFAULT_TRIALS, acm_seed).is_ok_and(|v| v.acm);
    if !x.has_inclusion(0, &mut oracle)? {
        return fail(format!("generator produced a configuration without the inclusion property: {ic:?}"));
    }
    if acm_decide(&x, DEFAULT_TRIALS, acm_seed)?.acm {
        return pass(format!("{} points acm", x.len()));
    }
    let confirmed = recheck_rational(&ic, |xq| {
        let mut oracle = |y: &Configuration<Rationals>| acm_decide(y, DEFAULT_TRIALS, acm_seed).is_ok_and(|v| v.acm);
        Ok(xq.has_inclusion(0, &mut oracle)? && !acm_decide(xq, DEFAULT_TRIALS, acm_seed)?.acm)
    })?;
    if confirmed {
        fail(format!("candidate: inclusion property but not ACM; seed={seed} config={ic:?}"))
    } else {
        pass("prime-field verdict not reproduced over the rationals")
    }
}

fn case_converse_scan(case: usize, seed: u64) -> Result<CaseOutcome, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = rng.random_range(3..=4);
    let opts = ab_parameters(t, false, true, 0);
    let (n, n0, n1) = opts[rng.random_range(0..opts.len())];
    within_variable_cap(&[1, n])?;
    let pattern = Pattern::Ab {
        n0,
        n1,
        levels: t,
        intersect_allowed: true,
    };
    // prefer instances where some A-column is shared by two rows
    let mut chosen = None;
    for _ in 0..RETRY_CAP {
        let ic = generate(&GenSpec::new(&[1, n], pattern.clone(), rng.next_u64()))?;
        let x = realize(&ic)?;
        let shared = x.count_criterion_hypotheses()?.pairwise_in_b_y;
        chosen = Some((ic, x));
        if !shared {
            break;
        }
    }
    let (ic, x) = chosen.expect("at least one attempt");
    let hyp = x.count_criterion_hypotheses()?;
    if !hyp.generic || !hyp.inclusion_absent {
        return fail(format!("hypotheses not certified: {hyp:?}"));
    }
    let acm_seed = rng.next_u64();
    let summary = format!("case {case}: n={n} t={t} n0={n0} n1={n1} shared={}", !hyp.pairwise_in_b_y);
    if !acm_decide(&x, DEFAULT_TRIALS, acm_seed)?.acm {
        return pass(summary);
    }
    if recheck_rational(&ic, |xq| Ok(acm_decide(xq, DEFAULT_TRIALS, acm_seed)?.acm))? {
        fail(format!("candidate: ACM with n1 outside the admissible set; {summary} seed={seed} config={ic:?}"))
    } else {
        pass("prime-field verdict not reproduced over the rationals")
    }
}
