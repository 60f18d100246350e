use std::fmt;

use mpacm::acm::{acm, acm_fast_paths, AcmOptions, Certificate};
use mpacm::algebra::Field;
use mpacm::lab::{self, SuiteReport};
use mpacm::point_ideals::{config_ideal, ring_of};
use mpacm::{d_membership, ConfigError, Configuration};

use crate::config_file::LoadError;
use crate::report::Report;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INVALID: u8 = 3;
pub const EXIT_UNDECIDABLE: u8 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdError {
    pub code: u8,
    pub message: String,
}

impl CmdError {
    pub fn usage(message: impl Into<String>) -> Self {
        CmdError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        CmdError {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<LoadError> for CmdError {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Syntax { .. } => CmdError::usage(e.to_string()),
            LoadError::Invalid { .. } => CmdError::invalid(e.to_string()),
        }
    }
}

impl From<ConfigError> for CmdError {
    fn from(e: ConfigError) -> Self {
        let code = match e {
            ConfigError::InvalidArgument(_) => EXIT_USAGE,
            ConfigError::Precondition(_) => EXIT_UNDECIDABLE,
            _ => EXIT_INVALID,
        };
        CmdError {
            code,
            message: e.to_string(),
        }
    }
}

/// A report with the exit code it should produce.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub code: u8,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, code: EXIT_OK }
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|t| t.to_string()).collect::<Vec<_>>().join(sep)
}

fn shape_name(dims: &[usize]) -> String {
    join(dims.iter().map(|a| format!("P^{a}")), " x ")
}

fn header<F: Field>(r: &mut Report, x: &Configuration<F>, field_name: &str) {
    r.human(format!("{} points in {} over {field_name}", x.len(), shape_name(x.dims())));
    r.field("factors", join(x.dims(), ","));
    r.field("points", x.len());
    r.field("field", field_name);
}

pub fn check<F: Field>(x: &Configuration<F>, field_name: &str, seed: u64) -> Result<Outcome, CmdError> {
    let mut r = Report::new();
    header(&mut r, x, field_name);
    for i in 0..x.num_factors() {
        let levels = x.level_sets(i)?;
        let sizes: Vec<usize> = levels.classes.iter().map(|(_, idx)| idx.len()).collect();
        r.human(format!("factor {}: {} level sets of sizes {:?}", i + 1, sizes.len(), sizes));
        r.field(format!("levels.{}", i + 1), sizes.len());
        r.field(format!("level_sizes.{}", i + 1), join(&sizes, ","));
    }
    if x.num_factors() == 2 {
        let star = x.has_star()?;
        r.field("star", star);
        if star {
            let s = x.staircase()?;
            let corners = join(s.corners.iter().map(|(i, j)| format!("({},{})", i + 1, j + 1)), ";");
            r.human(format!("staircase with {} rows and {} columns", s.row_points.len(), s.col_points.len()));
            r.field("corners", corners);
        }
    }
    if x.num_factors() >= 2 {
        let mut failure = None;
        let mut oracle = |y: &Configuration<F>| match mpacm::acm_decide(y, mpacm::acm::DEFAULT_TRIALS, seed) {
            Ok(v) => v.acm,
            Err(e) => {
                failure = Some(e);
                false
            }
        };
        let mut any = false;
        let mut per_factor = Vec::new();
        for i in 0..x.num_factors() {
            let inc = x.has_inclusion(i, &mut oracle)?;
            any |= inc;
            per_factor.push(inc);
        }
        if let Some(e) = failure {
            return Err(e.into());
        }
        r.field("inclusion", any);
        for (i, inc) in per_factor.iter().enumerate() {
            r.field(format!("inclusion.{}", i + 1), inc);
        }
    }
    if x.num_factors() == 2 && x.dims()[0] == 1 {
        let ab = x.ab_partition()?;
        r.human(format!(
            "A part {} points over {} columns, B part {} points over {} common columns",
            ab.a_part.len(),
            ab.n0,
            ab.b_part.len(),
            ab.n1
        ));
        r.field("n0", ab.n0);
        r.field("n1", ab.n1);
        match d_membership(ab.n0 as u64, ab.n1 as u64, x.dims()[1] as u64) {
            Ok(d) => {
                r.field("d_member", d.member);
                r.field("d_witness", d.witness.map_or("none".to_string(), |i| i.to_string()));
            }
            Err(_) => {
                r.human("admissible counts need n0 >= 2 and n >= 2");
                r.field("d_member", "na");
                r.field("d_witness", "none");
            }
        }
        let hyp = x.count_criterion_hypotheses()?;
        r.field("pairwise_in_b", hyp.pairwise_in_b_y);
        r.field("generic", hyp.generic);
        r.field("inclusion_absent", hyp.inclusion_absent);
        r.field("criterion_applies", hyp.applies());
    }
    let fast = acm_fast_paths(x, seed)?;
    r.field("acm-fast-path", fast.map_or("none", |p| p.id()));
    Ok(r.into())
}

pub struct IdealFlags<'a> {
    pub groebner: bool,
    /// Concatenated multidegrees.
    pub hilbert: &'a [u32],
    pub min_gens: bool,
}

pub fn ideal<F: Field>(x: &Configuration<F>, field_name: &str, flags: &IdealFlags) -> Result<Outcome, CmdError> {
    let mut r = Report::new();
    header(&mut r, x, field_name);
    let ring = ring_of(x)?;
    let i = config_ideal(x)?;
    let gb = i.fmt_groebner();
    r.human(format!(
        "ring with variables {}",
        join((0..ring.num_ambient_vars()).map(|v| ring.var_name(v)), ",")
    ));
    r.field("gb.size", gb.len());
    if flags.groebner {
        for (k, g) in gb.iter().enumerate() {
            r.field(format!("gb.{}", k + 1), g);
        }
    }
    if !flags.hilbert.len().is_multiple_of(x.num_factors()) {
        return Err(CmdError::usage(format!(
            "--hilbert takes {} degrees per multidegree, got {}",
            x.num_factors(),
            flags.hilbert.len()
        )));
    }
    for d in flags.hilbert.chunks(x.num_factors()) {
        let h = i.hilbert_multi(d).map_err(|e| CmdError::invalid(e.to_string()))?;
        r.field(format!("hilbert.{}", join(d, ".")), h);
    }
    if flags.min_gens {
        let mg = i.minimal_generators().map_err(|e| CmdError::invalid(e.to_string()))?;
        let mut counts = mg.counts.clone();
        counts.sort();
        for (d, c) in &counts {
            r.field(format!("mingens.{}", join(d, ".")), c);
        }
        r.field("mingens", mg.total());
    }
    Ok(r.into())
}

pub fn decide<F: Field>(x: &Configuration<F>, field_name: &str, opts: &AcmOptions) -> Result<Outcome, CmdError> {
    let mut r = Report::new();
    header(&mut r, x, field_name);
    let v = acm(x, opts)?;
    let ring = ring_of(x)?;
    let source = match v.certificate {
        Certificate::Combinatorial { .. } => "combinatorial criterion",
        _ => "linear-form regularity",
    };
    // a failure bound of 1 says nothing about the configuration
    let undecided = matches!(v.certificate, Certificate::MonteCarloFailure { error_bound, .. } if error_bound >= 1.0);
    if undecided {
        r.human("field too small for the failure bound; retry with a larger prime");
        r.field("acm", "undecided");
    } else {
        r.human(format!("{} by {source}", if v.acm { "ACM" } else { "not ACM" }));
        r.field("acm", v.acm);
    }
    r.field("certificate", v.certificate.kind());
    r.field("acm-fast-path", v.fast_path.map_or("none", |p| p.id()));
    let agrees = v.fast_path_agrees.filter(|_| !undecided);
    r.field("fast_path_agrees", agrees.map_or("na".to_string(), |b| b.to_string()));
    r.field("trials", opts.trials);
    r.field("seed", opts.seed);
    match &v.certificate {
        Certificate::RegularSequence { forms } => {
            for (k, f) in forms.iter().enumerate() {
                r.field(format!("witness.{}", k + 1), ring.fmt_poly(f));
            }
        }
        Certificate::MonteCarloFailure {
            failures, error_bound, ..
        } => {
            r.field("error_bound", format!("{error_bound:e}"));
            for (k, f) in failures.iter().enumerate() {
                r.field(
                    format!("failure.{}", k + 1),
                    format!("trial {} step {} degree {}", f.trial + 1, f.step + 1, f.degree),
                );
            }
        }
        Certificate::Combinatorial { path } => r.human(format!("criterion {} trusted", path.id())),
    }
    Ok(Outcome {
        report: r,
        code: if undecided { EXIT_UNDECIDABLE } else { EXIT_OK },
    })
}

fn suite_outcome(rep: &SuiteReport) -> Outcome {
    let mut r = Report::new();
    r.human(format!("{} cases in {:.2?}", rep.cases, rep.elapsed));
    for note in &rep.notes {
        r.human(note);
    }
    r.field("suite", &rep.suite);
    r.field("cases", rep.cases);
    r.field("pass", rep.passed);
    r.field("fail", rep.failed);
    r.field("seed", rep.seed);
    for (k, f) in rep.failures.iter().enumerate() {
        r.field(
            format!("failure.{}", k + 1),
            format!("{} case {} seed {}: {}", f.suite, f.case, f.seed, f.detail),
        );
    }
    Outcome {
        report: r,
        code: if rep.ok() { EXIT_OK } else { EXIT_INVALID },
    }
}

pub fn verify(suite: &str, cases: usize, seed: u64) -> Result<Outcome, CmdError> {
    Ok(suite_outcome(&lab::verify(suite, cases, seed)?))
}

pub fn scan(conjecture: &str, budget: usize, seed: u64) -> Result<Outcome, CmdError> {
    Ok(suite_outcome(&lab::scan(conjecture, budget, seed)?))
}
