use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wigner_core::lhv::{
    feasibility, pair_probability, random_distribution, sweep, target_margins, triangle_margin,
    triangle_operands, variant_margins, verify_certificate, Axis,
};
use wigner_core::{CorrelationMode, Error, LhvDistribution};

const MODES: [CorrelationMode; 2] = [CorrelationMode::Anti, CorrelationMode::Corr];

fn distribution() -> impl Strategy<Value = LhvDistribution<f64>> {
    proptest::array::uniform8(0.0..1.0f64).prop_filter_map("non-zero total", |raw| {
        let total: f64 = raw.iter().sum();
        (total > 1e-6).then(|| LhvDistribution::new(raw.map(|x| x / total)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn all_margins_are_non_negative(dist in distribution()) {
        for mode in MODES {
            prop_assert!(triangle_margin(&dist, mode) >= -1e-15);
            let v = variant_margins(&dist, mode);
            prop_assert!(v.flipped >= -1e-15);
            prop_assert!(v.weakened_sum >= -1e-15);
        }
    }

    #[test]
    fn pair_probabilities_sum_to_one(dist in distribution()) {
        let axes = [Axis::A, Axis::B, Axis::C];
        for mode in MODES {
            for f in axes {
                for a in axes.into_iter().filter(|&a| a != f) {
                    let total: f64 = [(true, true), (true, false), (false, true), (false, false)]
                        .iter()
                        .map(|&(fs, as_)| pair_probability(&dist, f, fs, a, as_, mode).unwrap())
                        .sum();
                    prop_assert!((total - 1.0).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn feasibility_agrees_with_target_margins() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut feasible, mut infeasible) = (0, 0);
    for _ in 0..1000 {
        let targets: [f64; 3] = std::array::from_fn(|_| rng.gen::<f64>() * 0.7);
        let direct = target_margins(targets).iter().all(|&m| m >= -1e-12);
        for mode in MODES {
            let result = feasibility(targets, mode).unwrap();
            assert_eq!(result.feasible, direct, "targets {targets:?} mode {mode}");
            if result.feasible {
                let witness = result.witness.expect("witness");
                let ops = triangle_operands(&witness, mode);
                for k in 0..3 {
                    assert!((ops[k] - targets[k]).abs() < 1e-12);
                }
            } else {
                let y = result.certificate.expect("certificate");
                assert!(verify_certificate(&y, targets, mode));
            }
        }
        if direct {
            feasible += 1;
        } else {
            infeasible += 1;
        }
    }
    assert!(
        feasible > 50 && infeasible > 50,
        "{feasible} feasible, {infeasible} infeasible"
    );
}

#[test]
fn quantum_targets_are_infeasible() {
    // sin²(θ/2)/2 at θ_ab = 2π/3, θ_ac = θ_cb = π/3
    let targets = [0.375, 0.125, 0.125];
    for mode in MODES {
        let result = feasibility(targets, mode).unwrap();
        assert!(!result.feasible);
        assert!(result.witness.is_none());
    }
}

#[test]
fn sweep_is_reproducible_and_non_negative() {
    for mode in MODES {
        let first = sweep::<f64>(mode, 2000, 11);
        assert_eq!(first, sweep::<f64>(mode, 2000, 11));
        assert_eq!(first.count, 2000);
        assert!(first.min_margin() >= 0.0);
    }
    assert_ne!(
        random_distribution::<f64>(1, 0),
        random_distribution::<f64>(1, 1)
    );
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(matches!(
        LhvDistribution::new([0.5; 8]),
        Err(Error::InvalidDistribution(_))
    ));
    assert!(matches!(
        feasibility([1.5, 0.0, 0.0], CorrelationMode::Anti),
        Err(Error::TargetOutOfRange(_))
    ));
    let uniform = LhvDistribution::<f64>::uniform();
    assert_eq!(
        pair_probability(
            &uniform,
            Axis::A,
            true,
            Axis::A,
            true,
            CorrelationMode::Anti
        ),
        Err(Error::SameAxis)
    );
}
