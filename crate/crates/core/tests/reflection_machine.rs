use grover_reflect::noreflect::machine::{haar_unitary, unitarity_defect};
use grover_reflect::noreflect::{
    consistency_scan, consistent_overlaps, implied_control_overlaps, optimize_reflection_machine,
    reflection_residual, OptimizerConfig, ReflectionMachineProblem,
};
use grover_reflect::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn scan_zero_set_is_the_endpoints() {
    let resolution = 10_000;
    let scan = consistency_scan(resolution).unwrap();
    let zeros = consistent_overlaps(&scan, 1e-9);
    assert_eq!(zeros, vec![0.0, 1.0]);
    let singular: Vec<f64> = scan.iter().filter(|p| p.singular).map(|p| p.c_abs * p.c_abs).collect();
    assert_eq!(singular.len(), 2);
    assert!((singular[0] - 0.5).abs() < 1e-12 && (singular[1] - 0.75).abs() < 1e-12);
    // t1 - t2 = -2c (1 - |c|^2) / ((2|c|^2-1)(4|c|^2-3)).
    for p in &scan {
        if let Some(d) = p.discrepancy {
            let c = p.c_abs;
            let analytic = 2.0 * c * (1.0 - c * c) / ((2.0 * c * c - 1.0) * (4.0 * c * c - 3.0)).abs();
            assert!((d - analytic).abs() <= 1e-9 * (1.0 + analytic), "c={c}");
        }
    }
}

proptest! {
    #[test]
    fn implied_overlaps_solve_both_equations(re in -0.7f64..0.7, im in -0.7f64..0.7) {
        let c = Complex64::new(re, im);
        prop_assume!(c.norm() <= 1.0);
        let k = implied_control_overlaps(c).unwrap();
        let s = c.norm_sqr();
        if let Some(t1) = k.t1 {
            prop_assert!((c - t1 * (2.0 * s - 1.0)).norm() < 1e-9);
        }
        if let Some(t2) = k.t2 {
            prop_assert!((c - t2 * (4.0 * s - 3.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn residual_is_a_probability_defect(seed: u64) {
        let problem = ReflectionMachineProblem::with_overlap(2, 0.9).unwrap();
        let u = haar_unitary(4, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(unitarity_defect(&u) < 1e-10);
        let r = reflection_residual(&u, &problem).unwrap();
        prop_assert!((0.0..=1.0).contains(&r));
    }
}

#[test]
fn exact_cases_are_reached() {
    let config = OptimizerConfig { starts: 20, ..OptimizerConfig::default() };
    for problem in [
        ReflectionMachineProblem::single_control(2).unwrap(),
        ReflectionMachineProblem::orthogonal_controls(2).unwrap(),
    ] {
        let best = optimize_reflection_machine(&problem, &config).unwrap();
        assert!(best.best_residual < 1e-6, "{:?}", best.summary());
        assert!(unitarity_defect(&best.unitary) < 1e-8);
        let check = reflection_residual(&best.unitary, &problem).unwrap();
        assert!((check - best.best_residual).abs() < 1e-9);
    }
}

#[test]
fn overlapping_controls_leave_a_gap() {
    let problem = ReflectionMachineProblem::with_overlap(2, 0.9).unwrap();
    let config = OptimizerConfig { starts: 24, ..OptimizerConfig::default() };
    let best = optimize_reflection_machine(&problem, &config).unwrap();
    assert!(best.best_residual > 0.10, "{}", best.best_residual);
    assert!(best.record.windows(2).all(|w| w[1] <= w[0]));
}
