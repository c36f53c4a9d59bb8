use std::f64::consts::{FRAC_PI_2, PI};

use binomial_grover::math::{self, Convention, MultiTargetFormula};
use binomial_grover::qdict::{self, build_dictionary_state, conditional_value_distribution};
use binomial_grover::search::{self, adaptive_search, array_value_search, satisfying_indices};
use binomial_grover::{
    build_binomial_prep, build_native_prep, export_gate_list, parse_gate_list, run_amplification,
    AdaptiveSchedule, BasisPattern, BinomialForm, CircuitProgram, DictionarySpec, Gate, Op,
    OracleSpec, Pipeline, StateVector, Superposition, ValuePredicate,
};
use proptest::prelude::*;

fn gate_strategy(n: usize) -> impl Strategy<Value = (u8, f64, usize)> {
    (0u8..4, -6.0f64..6.0, 0..n)
}

fn apply(s: &mut StateVector, (kind, angle, q): (u8, f64, usize)) {
    let g = match kind {
        0 => Gate::H,
        1 => Gate::X,
        2 => Gate::Z,
        _ => Gate::Ry(angle),
    };
    s.apply_gate(g, q).unwrap();
}

fn random_state(n: usize, gates: &[(u8, f64, usize)]) -> StateVector {
    let mut s = StateVector::new_zero(n).unwrap();
    for (q, &(_, a, _)) in (0..n).zip(gates.iter().cycle()) {
        s.apply_gate(Gate::Ry(a.abs() + 0.1), q).unwrap();
        s.apply_cphase(a, q, (q + 1) % n.max(2) % n).ok();
    }
    for &g in gates {
        apply(&mut s, g);
    }
    s
}

proptest! {
    #[test]
    fn norm_is_preserved(gates in prop::collection::vec(gate_strategy(5), 1..60)) {
        let s = random_state(5, &gates);
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn phase_flip_is_involution(
        gates in prop::collection::vec(gate_strategy(4), 1..10),
        targets in prop::collection::vec(0usize..16, 0..8),
    ) {
        let orig = random_state(4, &gates);
        let mut s = orig.clone();
        s.apply_phase_flip(&targets).unwrap();
        s.apply_phase_flip(&targets).unwrap();
        prop_assert_eq!(s, orig);
    }

    #[test]
    fn gates_preserve_inner_products(
        a in prop::collection::vec(gate_strategy(4), 1..12),
        b in prop::collection::vec(gate_strategy(4), 1..12),
        g in gate_strategy(4),
    ) {
        let (mut x, mut y) = (random_state(4, &a), random_state(4, &b));
        let before = x.inner(&y);
        apply(&mut x, g);
        apply(&mut y, g);
        prop_assert!((x.inner(&y) - before).norm() < 1e-12);
    }

    #[test]
    fn sampling_is_deterministic(
        gates in prop::collection::vec(gate_strategy(3), 1..10),
        shots in 1u64..2000,
        seed: u64,
    ) {
        let s = random_state(3, &gates);
        let h = s.sample(shots, seed).unwrap();
        prop_assert_eq!(h.total(), shots);
        prop_assert_eq!(h, s.sample(shots, seed).unwrap());
    }

    #[test]
    fn amplitude_reflection_symmetry(n in 1usize..16, k_frac in 0.0f64..1.0, w in 0.0f64..PI) {
        let k = ((n as f64) * k_frac) as usize;
        let a = math::amplitude_a(n, k, w).unwrap();
        let b = math::amplitude_a(n, n - k, PI - w).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn partition_probabilities_sum_to_one(n in 1usize..30, w in 0.0f64..PI) {
        let p = math::partition_profile(n, w).unwrap();
        prop_assert!((p.per_k_probability.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(p.per_k_amplitude.iter().all(|a| *a >= 0.0));
    }

    #[test]
    fn pipelines_agree(n in 1usize..=6, j in 0usize..=3, w in 0.0f64..PI, tv: usize) {
        let target = BasisPattern::new(tv % (1 << n), n).unwrap();
        let spec = OracleSpec::exact(target);
        let a = run_amplification(Pipeline::BGjA(w), &spec, j).unwrap();
        let b = run_amplification(Pipeline::GjANative(w), &spec, j).unwrap();
        prop_assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn binomial_forms_agree(n in 1usize..=6, w in 0.0f64..PI, gates in prop::collection::vec(gate_strategy(6), 0..8)) {
        let start = random_state(6, &gates);
        let pad = |p: CircuitProgram| {
            let mut q = CircuitProgram::new(6, "pad");
            q.ops = p.ops;
            q
        };
        let mut x = start.clone();
        let mut y = start;
        pad(build_binomial_prep(n, w, BinomialForm::RyAfterH).unwrap()).run(&mut x).unwrap();
        pad(build_binomial_prep(n, w, BinomialForm::RyZ).unwrap()).run(&mut y).unwrap();
        prop_assert!(x.max_abs_diff(&y) < 1e-12);
    }

    #[test]
    fn gate_list_round_trips(ops in prop::collection::vec((0u8..8, -10.0f64..10.0, 0usize..5, 0usize..5, prop::collection::vec(0usize..32, 0..4)), 0..30)) {
        let mut p = CircuitProgram::new(5, "random");
        p.iterations = ops.len();
        for (kind, t, a, b, set) in ops {
            let op = match kind {
                0 => Op::H(a),
                1 => Op::X(a),
                2 => Op::Z(a),
                3 => Op::Ry(t, a),
                4 => Op::Cp(t, a, b),
                5 => Op::Swap(a, b),
                6 => Op::Flip(set),
                _ => Op::Neg,
            };
            p.push(op).unwrap();
        }
        prop_assert_eq!(parse_gate_list(&export_gate_list(&p)).unwrap(), p);
    }

    #[test]
    fn dictionary_wraparound(values in prop::collection::vec(-9i64..10, 1..=5), m in 1usize..=4) {
        let spec = DictionarySpec::new(values.clone(), m, Superposition::Uniform).unwrap();
        let s = build_dictionary_state(&spec).unwrap();
        for i in 0..1usize << values.len() {
            let want = qdict::expected_subset_sum(&values, i, m);
            let (lo, hi) = qdict::window(m);
            prop_assert!(lo <= want && want <= hi);
            let raw: i64 = (0..values.len()).filter(|j| i >> j & 1 == 1).map(|j| values[j]).sum();
            prop_assert_eq!((raw - want).rem_euclid(1 << m), 0);
            let cond = conditional_value_distribution(&s, &spec, i);
            let slot = want.rem_euclid(1 << m) as usize;
            prop_assert!(cond[slot] >= 1.0 - 1e-9);
        }
    }
}

#[test]
fn maximality_on_dense_grid() {
    for n in 2..=14 {
        for k in 1..n {
            let best = math::amplitude_a(n, k, math::omega_max(n, k).unwrap()).unwrap();
            for i in 0..=4000 {
                let w = PI * i as f64 / 4000.0;
                assert!(
                    math::amplitude_a(n, k, w).unwrap() <= best + 1e-12,
                    "n={n} k={k} w={w}"
                );
            }
        }
    }
}

#[test]
fn uniform_reduction() {
    for n in 1..=20 {
        for k in 0..=n {
            let t = math::theta_of_omega(n, k, FRAC_PI_2).unwrap();
            assert!((t - math::theta_uniform(n)).abs() < 1e-15);
        }
    }
}

#[test]
fn ceil_plans_are_exact_and_roots_are_bracketed() {
    for n in 1..=16 {
        for k in 0..=n {
            let p = math::plan(n, k, Convention::Ceil).unwrap();
            let w = p.omega_ideal.expect("ceil plans always solve");
            assert!(math::is_exact(&p));
            let pred = math::predicted_probability(n, k, w, p.j_ideal).unwrap();
            assert!((pred - 1.0).abs() < 1e-12, "n={n} k={k}");
            let resid = (math::amplitude_a(n, k, w).unwrap() - p.theta_ideal.sin()).abs();
            assert!(resid <= math::ROOT_TOLERANCE, "n={n} k={k} resid={resid}");
            let bracket = if k == 0 {
                p.omega_max..=PI
            } else {
                0.0..=p.omega_max
            };
            assert!(bracket.contains(&w));
            assert!(
                (p.theta_max - math::amplitude_a(n, k, p.omega_max).unwrap().asin()).abs() < 1e-12
            );
        }
    }
}

#[test]
fn binomial_never_needs_more_iterations_than_uniform() {
    for n in 2..=16 {
        for k in 0..=n {
            let round = math::plan(n, k, Convention::Round).unwrap().j_ideal;
            let ceil = math::plan(n, k, Convention::Ceil).unwrap().j_ideal;
            assert!(round <= math::j_uniform(n), "n={n} k={k}");
            assert!(ceil <= math::j_uniform_ceil(n), "n={n} k={k}");
        }
    }
    // the ceil plan can exceed the rounded uniform count when θ_max = θ_uniform
    assert_eq!(math::plan(8, 4, Convention::Ceil).unwrap().j_ideal, 13);
    assert_eq!(math::j_uniform(8), 12);
}

#[test]
fn multi_target_consistency_binomial() {
    let values = vec![2, -1, 3, -2];
    for w in [15.0 * PI / 32.0, FRAC_PI_2, 17.0 * PI / 32.0, 1.0, 2.2] {
        let spec = DictionarySpec::new(values.clone(), 3, Superposition::Binomial(w)).unwrap();
        for pred in [
            ValuePredicate::Negative,
            ValuePredicate::Equals(1),
            ValuePredicate::Equals(0),
        ] {
            let sat = satisfying_indices(&spec, pred);
            if sat.is_empty() {
                continue;
            }
            let weights: Vec<usize> = sat.iter().map(|i| i.count_ones() as usize).collect();
            let theta = math::multi_target_theta(4, &weights, w, MultiTargetFormula::RootSumSquare)
                .unwrap();
            for j in 0..=2 {
                let r = array_value_search(&spec, pred, j, 8, 0).unwrap();
                let want = math::amplified_probability(theta, j);
                assert!(
                    (r.target_probability - want).abs() < 1e-9,
                    "w={w} {pred:?} j={j}"
                );
            }
        }
    }
}

#[test]
fn favoring_property() {
    let uniform = 2f64.powf(-5.5);
    let low = math::partition_profile(11, 15.0 * PI / 32.0).unwrap();
    let high = math::partition_profile(11, 17.0 * PI / 32.0).unwrap();
    for k in 0..=5 {
        assert!(low.per_k_amplitude[k] > uniform);
    }
    for k in 6..=11 {
        assert!(high.per_k_amplitude[k] > uniform);
    }
}

#[test]
fn adaptive_successes_are_always_verified() {
    let spec = DictionarySpec::new(vec![3, -2, 1, -4], 3, Superposition::Uniform).unwrap();
    for seed in 0..40 {
        for pred in [ValuePredicate::Negative, ValuePredicate::Equals(-1)] {
            let rounds = adaptive_search(&spec, pred, &AdaptiveSchedule::with_seed(seed)).unwrap();
            for r in &rounds {
                let label = r.histogram.keys().next().unwrap();
                let index = usize::from_str_radix(label, 2).unwrap() & 0b1111;
                let ok = pred.holds(qdict::expected_subset_sum(&spec.values, index, 3));
                assert_eq!(r.verified, Some(ok));
            }
            assert!(rounds[..rounds.len() - 1]
                .iter()
                .all(|r| r.verified == Some(false)));
            if search::adaptive_succeeded(&rounds) {
                assert!(!satisfying_indices(&spec, pred).is_empty());
            }
        }
    }
}

#[test]
fn native_prep_matches_product_formula() {
    for n in 1..=6 {
        let w = 0.3 + 0.4 * n as f64;
        let s = build_native_prep(n, w).unwrap().execute().unwrap();
        for i in 0..1usize << n {
            let k = i.count_ones() as usize;
            let want = math::amplitude_a(n, k, w).unwrap();
            assert!((s.amplitude(i).re - want).abs() < 1e-14);
        }
    }
}
