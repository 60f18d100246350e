//! Acceptance criteria. Prints one line per criterion and exits nonzero if
//! any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mpacm::acm::{acm_decide, verify_witness, Certificate, DEFAULT_TRIALS};
use mpacm::algebra::PrimeField;
use mpacm::lab::{
    admissible_table, certify_configuration, eight_point_example, four_point_example, scan,
    six_point_example, verify, SuiteReport, ADMISSIBLE_N0_4, DEFAULT_SEED,
};
use mpacm::{Configuration, IntConfig};

type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn realize(ic: &IntConfig) -> Configuration<PrimeField> {
    ic.realize(&PrimeField::default()).expect("valid configuration")
}

fn suite_line(r: &SuiteReport) -> String {
    let mut s = format!("{} pass={} fail={}", r.suite, r.passed, r.failed);
    for f in r.failures.iter().take(3) {
        s.push_str(&format!(" [case {} seed {}: {}]", f.case, f.seed, f.detail));
    }
    s
}

fn four_point() -> Outcome {
    let x = realize(&four_point_example());
    let generic = certify_configuration(&x).unwrap_or(false);
    let star = x.has_star().unwrap_or(true);
    let v = acm_decide(&x, DEFAULT_TRIALS, DEFAULT_SEED).expect("decision");
    let witness = match &v.certificate {
        Certificate::RegularSequence { forms } => verify_witness(&x, forms).unwrap_or(false),
        _ => false,
    };
    Outcome {
        ok: generic && !star && v.acm && witness,
        detail: format!("generic={generic} star={star} acm={} witness-verified={witness}", v.acm),
    }
}

fn six_and_eight_points() -> Outcome {
    let x6 = realize(&six_point_example());
    let x8 = realize(&eight_point_example());
    let v6 = acm_decide(&x6, DEFAULT_TRIALS, DEFAULT_SEED).expect("decision");
    let v8 = acm_decide(&x8, DEFAULT_TRIALS, DEFAULT_SEED).expect("decision");
    let failures = match &v6.certificate {
        Certificate::MonteCarloFailure { failures, .. } => failures.len(),
        _ => 0,
    };
    let witness = match &v8.certificate {
        Certificate::RegularSequence { forms } => verify_witness(&x8, forms).unwrap_or(false),
        _ => false,
    };
    Outcome {
        ok: !v6.acm && failures >= DEFAULT_TRIALS && v8.acm && witness,
        detail: format!(
            "six-point acm={} ({failures} failed trials), eight-point acm={} witness-verified={witness}",
            v6.acm, v8.acm
        ),
    }
}

fn admissible_table_check() -> Outcome {
    let table = admissible_table(4, 2, 35).expect("valid parameters");
    Outcome {
        ok: table == ADMISSIBLE_N0_4,
        detail: format!("{table:?}"),
    }
}

fn single_suite(suite: &str, cases: usize) -> Outcome {
    match verify(suite, cases, DEFAULT_SEED) {
        Ok(r) => Outcome {
            ok: r.ok() && r.cases == cases,
            detail: suite_line(&r),
        },
        Err(e) => Outcome {
            ok: false,
            detail: format!("error: {e}"),
        },
    }
}

fn decomposition_and_star_acm() -> Outcome {
    let a = verify("thm-decomposition", 50, DEFAULT_SEED).expect("known suite");
    let b = verify("thm-star-acm", 50, DEFAULT_SEED).expect("known suite");
    Outcome {
        ok: a.ok() && b.ok() && a.cases == 50 && b.cases == 50,
        detail: format!("{}; {}", suite_line(&a), suite_line(&b)),
    }
}

fn disjoint_columns() -> Outcome {
    let r = verify("thm-4.7", 50, DEFAULT_SEED).expect("known suite");
    let members = r.summaries.iter().filter(|s| s.contains("member=true")).count();
    let others = r.summaries.iter().filter(|s| s.contains("member=false")).count();
    Outcome {
        ok: r.ok() && r.cases == 50 && members > 0 && others > 0,
        detail: format!("{} (n1 in D: {members}, n1 not in D: {others})", suite_line(&r)),
    }
}

fn shared_columns() -> Outcome {
    let r = verify("thm-4.8", 30, DEFAULT_SEED).expect("known suite");
    let claims = r.failures.iter().filter(|f| f.suite == "thm-4.8-claim").count();
    Outcome {
        ok: r.ok() && r.cases == 40,
        detail: format!("{} (30 generated + 10 saturation claims, {claims} claim failures)", suite_line(&r)),
    }
}

fn conjecture_scans() -> Outcome {
    let a = scan("conj-3.9", 30, DEFAULT_SEED).expect("known scan");
    let b = scan("conj-4.10", 30, DEFAULT_SEED).expect("known scan");
    Outcome {
        ok: a.ok() && b.ok() && a.cases == 30 && b.cases == 30,
        detail: format!("{}; {}", suite_line(&a), suite_line(&b)),
    }
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("four-point configuration", Duration::from_secs(5), Box::new(four_point)),
        ("six- and eight-point configurations", Duration::from_secs(30), Box::new(six_and_eight_points)),
        ("admissible table n0=4 n=2", Duration::from_secs(1), Box::new(admissible_table_check)),
        ("star iff inclusion, 200 cases", Duration::from_secs(10), Box::new(|| single_suite("lemma-3.4", 200))),
        ("staircase decomposition and star ACM, 50 cases", Duration::from_secs(300), Box::new(decomposition_and_star_acm)),
        ("chain ideal for inclusion, 50 cases", Duration::from_secs(300), Box::new(|| single_suite("prop-3.2", 50))),
        ("disjoint A-columns iff criterion, 50 cases", Duration::from_secs(600), Box::new(disjoint_columns)),
        ("shared A-columns sufficiency and saturation claim", Duration::from_secs(600), Box::new(shared_columns)),
        ("P1 x P1 classification, 200 cases", Duration::from_secs(120), Box::new(|| single_suite("p1xp1", 200))),
        ("engine soundness", Duration::from_secs(60), Box::new(|| single_suite("engine", 50))),
        ("conjecture scans, 30 + 30 cases", Duration::from_secs(900), Box::new(conjecture_scans)),
    ];
    let mut all_ok = true;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let ok = out.ok && elapsed < *limit;
        all_ok &= ok;
        println!(
            "criterion {:>2} {} : {} ({:.2?} / limit {:?}) {}",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            elapsed,
            limit,
            out.detail
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
