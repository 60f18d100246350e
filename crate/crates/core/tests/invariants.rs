mod common;

use common::{admissible_brute, field, realize, reduction_length};
use mpacm::acm::{acm_decide, acm_fast_paths, is_saturated, verify_witness, Certificate};
use mpacm::algebra::linalg::inverse;
use mpacm::algebra::Field;
use mpacm::lab::{certify_configuration, generate, replay, verify, GenSpec, Pattern};
use mpacm::point_ideals::{config_ideal, ring_of, staircase_ideal};
use mpacm::{d_membership, Configuration, IntConfig};
use mpacm::algebra::PrimeField;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_config(seed: u64) -> IntConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = [rng.random_range(1..=2), rng.random_range(1..=2)];
    let pattern = match rng.random_range(0..3) {
        0 => Pattern::Random {
            points: rng.random_range(1..=6),
        },
        1 => Pattern::Star { lambda: None },
        _ => Pattern::Inclusion {
            levels: rng.random_range(2..=3),
        },
    };
    generate(&GenSpec::new(&dims, pattern, seed).with_max_points(7)).unwrap()
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<u32>> {
    let f = field();
    loop {
        let m: Vec<Vec<u32>> = (0..n).map(|_| (0..n).map(|_| f.random(rng)).collect()).collect();
        if inverse(&f, &m).is_some() {
            return m;
        }
    }
}

fn decide(x: &Configuration<PrimeField>) -> bool {
    acm_decide(x, 3, 17).unwrap().acm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decision_matches_interpolation_oracle(seed in any::<u64>()) {
        let x = realize(&small_config(seed));
        let length = reduction_length(&x, seed ^ 1).unwrap();
        prop_assert!(length >= x.len());
        prop_assert_eq!(decide(&x), length == x.len());
    }

    #[test]
    fn witnesses_reverify(seed in any::<u64>()) {
        let x = realize(&small_config(seed));
        let v = acm_decide(&x, 3, seed).unwrap();
        match v.certificate {
            Certificate::RegularSequence { forms } => {
                prop_assert!(v.acm);
                prop_assert!(verify_witness(&x, &forms).unwrap());
            }
            Certificate::MonteCarloFailure { trials, failures, .. } => {
                prop_assert!(!v.acm);
                prop_assert!(failures.len() >= trials);
            }
            Certificate::Combinatorial { .. } => prop_assert!(false, "not requested"),
        }
    }

    #[test]
    fn decision_is_invariant_under_coordinate_changes(seed in any::<u64>()) {
        let x = realize(&small_config(seed));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mats: Vec<_> = x.dims().iter().map(|&a| random_invertible(&mut rng, a + 1)).collect();
        let moved = x.transform(&mats).unwrap();
        prop_assert_eq!(decide(&x), decide(&moved));
        prop_assert_eq!(x.has_star().unwrap(), moved.has_star().unwrap());
    }

    #[test]
    fn decision_is_symmetric_in_the_factors(seed in any::<u64>()) {
        let x = realize(&small_config(seed));
        prop_assert_eq!(decide(&x), decide(&x.transposed().unwrap()));
    }

    #[test]
    fn p1xp1_decision_is_the_star_property(seed in any::<u64>(), points in 1usize..=9) {
        let x = realize(&generate(&GenSpec::new(&[1, 1], Pattern::Random { points }, seed)).unwrap());
        prop_assert_eq!(decide(&x), x.has_star().unwrap());
    }

    #[test]
    fn star_configurations_decompose(seed in any::<u64>()) {
        let x = realize(&generate(&GenSpec::new(&[1, 2], Pattern::Star { lambda: None }, seed).with_max_points(8)).unwrap());
        let ring = ring_of(&x).unwrap();
        prop_assert_eq!(staircase_ideal(&ring, &x.staircase().unwrap()).unwrap(), config_ideal(&x).unwrap());
    }

    #[test]
    fn ideals_of_points_are_saturated(seed in any::<u64>()) {
        let x = realize(&small_config(seed));
        prop_assert!(is_saturated(&config_ideal(&x).unwrap()));
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>()) {
        prop_assert_eq!(small_config(seed), small_config(seed));
    }

    #[test]
    fn ab_configurations_are_certified(seed in any::<u64>(), n1 in 0usize..=3, intersect in any::<bool>()) {
        let pattern = Pattern::Ab { n0: 3, n1, levels: 3, intersect_allowed: intersect };
        let x = realize(&generate(&GenSpec::new(&[1, 2], pattern, seed)).unwrap());
        prop_assert!(certify_configuration(&x).unwrap());
        let ab = x.ab_partition().unwrap();
        prop_assert_eq!((ab.n0, ab.n1), (3, n1));
        prop_assert!(!x.has_inclusion(0, &mut |_| true).unwrap());
        if !intersect {
            prop_assert!(x.count_criterion_hypotheses().unwrap().pairwise_in_b_y);
        }
    }

    #[test]
    fn fast_paths_agree_with_the_oracle(seed in any::<u64>(), n1 in 0usize..=3, intersect in any::<bool>()) {
        let levels = if intersect { 3 } else { 2 };
        let pattern = Pattern::Ab { n0: 2, n1, levels, intersect_allowed: intersect };
        let x = realize(&generate(&GenSpec::new(&[1, 2], pattern, seed)).unwrap());
        if let Some(path) = acm_fast_paths(&x, seed).unwrap() {
            prop_assert_eq!(path.verdict(), decide(&x));
        }
    }

    #[test]
    fn membership_matches_enumeration(n0 in 2u64..8, n1 in 0u64..120, n in 2u64..5) {
        prop_assert_eq!(d_membership(n0, n1, n).unwrap().member, admissible_brute(n0 as i64, n1 as i64, n as i64));
    }
}

#[test]
fn suites_are_reproducible() {
    for suite in ["lemma-3.4", "thm-4.7", "examples"] {
        let a = verify(suite, 6, 42).unwrap();
        let b = verify(suite, 6, 42).unwrap();
        assert_eq!((a.passed, a.failed, &a.summaries), (b.passed, b.failed, &b.summaries));
        assert_eq!(a.failed, 0, "{suite}: {:?}", a.failures);
    }
}

#[test]
fn replay_matches_suite_case() {
    let report = verify("p1xp1", 4, 9).unwrap();
    for (case, summary) in report.summaries.iter().enumerate() {
        let seed = mpacm::lab::case_seed(9, case);
        assert_eq!(replay("p1xp1", case, seed).unwrap(), mpacm::lab::CaseOutcome::Pass(summary.clone()));
    }
}
