//! Deciding the arithmetically Cohen-Macaulay property.
//!
//! `R/I_X` has dimension `n`, the number of factors. It is Cohen-Macaulay
//! iff `n` general linear forms are a regular sequence on it, which is
//! checked through ideal quotients. Success is a certificate; failure on
//! every trial is reported as a Monte Carlo verdict with an error bound.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mpacm_algebra::hilbert::initial_degree;
use mpacm_algebra::linalg::inverse;
use mpacm_algebra::{Field, Ideal, Poly, Ring};

use crate::config::{d_membership, Configuration, MultiPoint, ProjPoint};
use crate::error::ConfigError;
use crate::point_ideals::{config_ideal_in, point_ideal, ring_of};

pub const DEFAULT_TRIALS: usize = 3;

/// Combinatorial criterion that settled a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FastPath {
    /// Two factors with the star property.
    Star,
    /// First factor `P^1` with the inclusion property.
    Inclusion,
    /// `P^1 x P^n`, certified generic, `N1 ∈ D(X)`.
    AdmissibleCount,
    /// `P^1 x P^n`, certified generic, disjoint A-columns, `N1 ∉ D(X)`.
    InadmissibleCount,
}

impl FastPath {
    /// Stable identifier used in reports.
    pub fn id(&self) -> &'static str {
        match self {
            FastPath::Star => "star",
            FastPath::Inclusion => "inclusion",
            FastPath::AdmissibleCount => "thm-4.8",
            FastPath::InadmissibleCount => "thm-4.7",
        }
    }

    pub fn verdict(&self) -> bool {
        !matches!(self, FastPath::InadmissibleCount)
    }
}

/// One failed trial: the step whose form was a zero divisor and the least
/// degree of a quotient element outside the previous ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialFailure {
    pub trial: usize,
    pub step: usize,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate<E> {
    /// Linear forms forming a regular sequence of full length.
    RegularSequence { forms: Vec<Poly<E>> },
    /// Every trial found a zero divisor. `error_bound` bounds the probability
    /// that an ACM configuration produces this outcome.
    MonteCarloFailure {
        trials: usize,
        failures: Vec<TrialFailure>,
        error_bound: f64,
    },
    /// Verdict taken from a criterion without algebraic confirmation.
    Combinatorial { path: FastPath },
}

impl<E> Certificate<E> {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::RegularSequence { .. } => "regular-sequence",
            Certificate::MonteCarloFailure { .. } => "monte-carlo",
            Certificate::Combinatorial { .. } => "combinatorial",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AcmVerdict<E> {
    pub acm: bool,
    pub certificate: Certificate<E>,
    pub fast_path: Option<FastPath>,
    /// Whether the fast path agreed with the algebraic decision, when both
    /// ran.
    pub fast_path_agrees: Option<bool>,
}

#[derive(Clone, Copy, Debug)]
pub struct AcmOptions {
    pub trials: usize,
    pub seed: u64,
    pub trust_theorems: bool,
}

impl Default for AcmOptions {
    fn default() -> Self {
        AcmOptions {
            trials: DEFAULT_TRIALS,
            seed: 0,
            trust_theorems: false,
        }
    }
}

/// `true` iff `saturation_irrelevant(I) = I`.
pub fn is_saturated<F: Field>(i: &Ideal<F>) -> bool {
    i.is_saturated_irrelevant()
}

fn random_linear_form<F: Field>(ring: &Ring<F>, rng: &mut ChaCha8Rng) -> Poly<F::Elem> {
    let f = ring.field();
    loop {
        let coeffs: Vec<(usize, F::Elem)> = (0..ring.num_ambient_vars())
            .map(|i| (i, f.random(rng)))
            .collect();
        let l = ring.linear_form(&coeffs);
        if !l.is_zero() {
            return l;
        }
    }
}

enum SequenceCheck<F: Field> {
    Regular(Ideal<F>),
    ZeroDivisor { step: usize, degree: u32 },
}

fn check_sequence<F: Field>(i: &Ideal<F>, forms: &[Poly<F::Elem>]) -> Result<SequenceCheck<F>, ConfigError> {
    let ring = i.ring();
    let mut j = i.clone();
    for (k, l) in forms.iter().enumerate() {
        let q = j.quotient_poly(l)?;
        if q != j {
            let degree = q
                .groebner()
                .iter()
                .filter(|g| !j.contains(g))
                .filter_map(|g| g.degree())
                .min()
                .unwrap_or(0);
            return Ok(SequenceCheck::ZeroDivisor { step: k, degree });
        }
        j = j.sum(&Ideal::new(ring, vec![l.clone()]))?;
    }
    Ok(SequenceCheck::Regular(j))
}

/// Length of `R/J` when it is Artinian.
fn artinian_length<F: Field>(j: &Ideal<F>) -> Option<usize> {
    let ring = j.ring();
    let lms = j.leading_monomials();
    let artinian = (0..ring.num_ambient_vars()).all(|v| {
        lms.iter()
            .any(|m| m.degree() > 0 && m.degree() == m.exp(v) as u32)
    });
    if !artinian {
        return None;
    }
    let mut total = 0;
    for t in 0.. {
        let h = j.hilbert_std(t).ok()?;
        if h == 0 {
            break;
        }
        total += h;
    }
    Some(total)
}

/// Decides ACM-ness of `x` with `trials` independent draws of linear forms.
pub fn acm_decide<F: Field>(
    x: &Configuration<F>,
    trials: usize,
    seed: u64,
) -> Result<AcmVerdict<F::Elem>, ConfigError> {
    if trials == 0 {
        return Err(ConfigError::InvalidArgument("trials must be positive".into()));
    }
    let ring = ring_of(x)?;
    let ix = config_ideal_in(&ring, x)?;
    let n = x.num_factors();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let forms: Vec<Poly<F::Elem>> = (0..n).map(|_| random_linear_form(&ring, &mut rng)).collect();
        match check_sequence(&ix, &forms)? {
            SequenceCheck::Regular(j) => {
                if artinian_length(&j) != Some(x.len()) {
                    return Err(ConfigError::Precondition(
                        "regular sequence did not cut the expected number of points".into(),
                    ));
                }
                return Ok(AcmVerdict {
                    acm: true,
                    certificate: Certificate::RegularSequence { forms },
                    fast_path: None,
                    fast_path_agrees: None,
                });
            }
            SequenceCheck::ZeroDivisor { step, degree } => {
                failures.push(TrialFailure { trial, step, degree })
            }
        }
    }
    let per_trial = (n * x.len()) as f64 / x.field().sample_space() as f64;
    Ok(AcmVerdict {
        acm: false,
        certificate: Certificate::MonteCarloFailure {
            trials,
            failures,
            error_bound: per_trial.min(1.0).powi(trials as i32),
        },
        fast_path: None,
        fast_path_agrees: None,
    })
}

/// Re-checks a regular-sequence witness from scratch.
pub fn verify_witness<F: Field>(x: &Configuration<F>, forms: &[Poly<F::Elem>]) -> Result<bool, ConfigError> {
    if forms.len() != x.num_factors() {
        return Ok(false);
    }
    let ix = config_ideal_in(&ring_of(x)?, x)?;
    Ok(match check_sequence(&ix, forms)? {
        SequenceCheck::Regular(j) => artinian_length(&j) == Some(x.len()),
        SequenceCheck::ZeroDivisor { .. } => false,
    })
}

/// Combinatorial criteria that settle ACM-ness without algebra, if any
/// applies. For three or more factors the inclusion property's ACM
/// requirement on level images is discharged with [`acm_decide`].
pub fn acm_fast_paths<F: Field>(x: &Configuration<F>, seed: u64) -> Result<Option<FastPath>, ConfigError> {
    let dims = x.dims();
    if dims.len() == 2 && x.has_star()? {
        return Ok(Some(FastPath::Star));
    }
    if dims.len() >= 2 && dims[0] == 1 {
        let mut failure = None;
        let mut oracle = |y: &Configuration<F>| match acm_decide(y, DEFAULT_TRIALS, seed) {
            Ok(v) => v.acm,
            Err(e) => {
                failure = Some(e);
                false
            }
        };
        let inclusion = x.has_inclusion(0, &mut oracle)?;
        if let Some(e) = failure {
            return Err(e);
        }
        if inclusion {
            return Ok(Some(FastPath::Inclusion));
        }
    }
    if dims.len() == 2 && dims[0] == 1 && dims[1] >= 2 {
        let hyp = x.count_criterion_hypotheses()?;
        let ab = x.ab_partition()?;
        if !hyp.inclusion_absent || !hyp.generic || ab.n0 < 2 {
            return Ok(None);
        }
        let dm = d_membership(ab.n0 as u64, ab.n1 as u64, dims[1] as u64)?;
        if dm.member {
            return Ok(Some(FastPath::AdmissibleCount));
        }
        if hyp.pairwise_in_b_y {
            return Ok(Some(FastPath::InadmissibleCount));
        }
    }
    Ok(None)
}

/// Fast paths followed by the algebraic decision. With `trust_theorems` a
/// fast-path verdict is returned without the algebra.
pub fn acm<F: Field>(x: &Configuration<F>, opts: &AcmOptions) -> Result<AcmVerdict<F::Elem>, ConfigError> {
    let fast = acm_fast_paths(x, opts.seed)?;
    if let (Some(path), true) = (fast, opts.trust_theorems) {
        return Ok(AcmVerdict {
            acm: path.verdict(),
            certificate: Certificate::Combinatorial { path },
            fast_path: Some(path),
            fast_path_agrees: None,
        });
    }
    let mut v = acm_decide(x, opts.trials, opts.seed)?;
    v.fast_path = fast;
    v.fast_path_agrees = fast.map(|p| p.verdict() == v.acm);
    Ok(v)
}

/// A configuration `X'` in `P^1 x P^n` and a point `P = P_0 x Q_0` outside
/// it, with `Q_0` an A-column and `P_0` a row meeting `B_{X'}`.
#[derive(Clone, Debug)]
pub struct SaturationInstance<F: Field> {
    pub x_prime: Configuration<F>,
    pub point: MultiPoint<F::Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationClaimReport {
    /// Initial degree of the column ideal of the points in row `P_0`.
    pub r: u32,
    /// Number of points in column `Q_0`.
    pub s: usize,
    /// `(I_{X'} + I_P)` saturated by the maximal ideal equals
    /// `(x0, y0, ..., y_{n-1}, x1^s y_n^r)`.
    pub holds: bool,
    /// `I_{X'} + I_P` is already saturated by the maximal ideal.
    pub sum_saturated: bool,
    /// Saturation with respect to the multigraded irrelevant ideal is the
    /// unit ideal.
    pub irrelevant_saturation_is_unit: bool,
}

/// Matrix sending `target` to the last basis vector.
fn to_last_basis_vector<F: Field>(field: &F, target: &ProjPoint<F::Elem>) -> Option<Vec<Vec<F::Elem>>> {
    let c = target.coords();
    let m = c.len();
    let k = c.iter().position(|v| !field.is_zero(v))?;
    // columns: e_j for j != k, then the target
    let cols: Vec<Vec<F::Elem>> = (0..m)
        .filter(|&j| j != k)
        .map(|j| (0..m).map(|i| if i == j { field.one() } else { field.zero() }).collect())
        .chain(std::iter::once(c.to_vec()))
        .collect();
    let b: Vec<Vec<F::Elem>> = (0..m).map(|i| cols.iter().map(|col| col[i].clone()).collect()).collect();
    inverse(field, &b)
}

impl<F: Field> SaturationInstance<F> {
    /// Moves coordinates so that `P = [0,1] x [0,...,0,1]`, i.e.
    /// `I_P = (x0, y0, ..., y_{n-1})`.
    pub fn standardized(&self) -> Result<SaturationInstance<F>, ConfigError> {
        let field = self.x_prime.field();
        let mats: Vec<Vec<Vec<F::Elem>>> = self
            .point
            .parts()
            .iter()
            .map(|q| to_last_basis_vector(field, q).ok_or(ConfigError::Precondition("zero point".into())))
            .collect::<Result<_, _>>()?;
        let x_prime = self.x_prime.transform(&mats)?;
        let pt = Configuration::new(
            field.clone(),
            self.x_prime.shape().clone(),
            vec![self.point.clone()],
        )?
        .transform(&mats)?;
        Ok(SaturationInstance {
            x_prime,
            point: pt.points()[0].clone(),
        })
    }

    fn check_preconditions(&self) -> Result<(), ConfigError> {
        let x = &self.x_prime;
        let dims = x.dims();
        if dims.len() != 2 || dims[0] != 1 || dims[1] < 2 {
            return Err(ConfigError::Precondition("shape must be P^1 x P^n with n >= 2".into()));
        }
        if x.contains(&self.point) {
            return Err(ConfigError::Precondition("point already lies in X'".into()));
        }
        let ab = x.ab_partition()?;
        if !ab.a_y.contains(self.point.part(1)) {
            return Err(ConfigError::Precondition("column of P is not an A-column of X'".into()));
        }
        let b_rows: Vec<&ProjPoint<F::Elem>> = ab.b_part.iter().map(|&k| x.points()[k].part(0)).collect();
        if !b_rows.contains(&self.point.part(0)) {
            return Err(ConfigError::Precondition("row of P does not meet B_X'".into()));
        }
        Ok(())
    }
}

/// Checks `(I_{X'} + I_P)^sat = (x0, y0, ..., y_{n-1}, x1^s y_n^r)` where the
/// saturation is with respect to the ideal of all variables, viewing the
/// points as lines of `P^{n+2}`.
pub fn point_addition_saturation_claim<F: Field>(
    inst: &SaturationInstance<F>,
    acm_seed: u64,
) -> Result<SaturationClaimReport, ConfigError> {
    inst.check_preconditions()?;
    if !acm_decide(&inst.x_prime, DEFAULT_TRIALS, acm_seed)?.acm {
        return Err(ConfigError::Precondition("X' is not ACM".into()));
    }
    let inst = inst.standardized()?;
    let x = &inst.x_prime;
    let field = x.field();
    let n = x.dims()[1];
    let row = inst.point.part(0);
    let col = inst.point.part(1);

    let type_a: Vec<Vec<F::Elem>> = x
        .points()
        .iter()
        .filter(|p| p.part(0) == row)
        .map(|p| p.part(1).coords().to_vec())
        .collect();
    let s = x.points().iter().filter(|p| p.part(1) == col).count();
    let r = initial_degree(field, &type_a)?;

    let ring = ring_of(x)?;
    let ix = config_ideal_in(&ring, x)?;
    let ip = point_ideal(&ring, &inst.point);
    let sum = ix.sum(&ip)?;
    let sat = sum.saturation_maximal();

    let mut gens = vec![ring.var(ring.var_index(0, 0))];
    gens.extend((0..n).map(|j| ring.var(ring.var_index(1, j))));
    gens.push(ring.mul(
        &ring.pow(&ring.var(ring.var_index(0, 1)), s as u32),
        &ring.pow(&ring.var(ring.var_index(1, n)), r),
    ));
    let expected = Ideal::new(&ring, gens);
    Ok(SaturationClaimReport {
        r,
        s,
        holds: sat == expected,
        sum_saturated: sat == sum,
        irrelevant_saturation_is_unit: sum.saturation_irrelevant().is_unit(),
    })
}
