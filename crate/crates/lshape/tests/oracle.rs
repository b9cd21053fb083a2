use lshape::closedform::{
    optimize_asym_ratio_box, optimize_sym_fixed_ratio, PlanDims, RatioInterval,
};
use lshape::geometry::SymRatio;
use lshape::oracle::{
    asym_envelope_gradient, fixed_height_slope, golden_section_min, grid_refine_min,
    kkt_check_asym, kkt_check_sym, sym_envelope_gradient, verify_scenario, KktTolerances,
    ScalarObjective, ScenarioInput, ACTIVE_SET_TOL, VERIFY_OBJECTIVE_RTOL, VERIFY_POINT_RTOL,
};
use lshape::Error;
use proptest::prelude::*;

fn close(actual: f64, frozen: f64) -> bool {
    (actual - frozen).abs() <= 1e-12 * frozen.abs().max(1.0)
}

fn central_diff(f: &dyn Fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-6 * x.abs().max(1.0);
    (f(x + h) - f(x - h)) / (2.0 * h)
}

#[test]
fn golden_section_finds_a_parabola_minimum() {
    let f = |x: f64| (x - 3.0) * (x - 3.0) + 1.0;
    let obj = ScalarObjective::new((f64::NEG_INFINITY, f64::INFINITY), &f);
    let (x, y) = golden_section_min(&obj, 0.0, 10.0, 1e-12).unwrap();
    assert!((x - 3.0).abs() <= 1e-6, "x = {x}");
    assert!((y - 1.0).abs() <= 1e-12);
}

#[test]
fn golden_section_validates_its_bracket() {
    let f = |x: f64| x * x;
    let obj = ScalarObjective::new((0.0, 10.0), &f);
    assert!(matches!(golden_section_min(&obj, 5.0, 5.0, 1e-9), Err(Error::Interval(_))));
    assert!(matches!(golden_section_min(&obj, 7.0, 3.0, 1e-9), Err(Error::Interval(_))));
    // Bracket escaping the declared domain is refused up front.
    assert!(matches!(golden_section_min(&obj, -1.0, 5.0, 1e-9), Err(Error::Interval(_))));
    assert!(matches!(
        golden_section_min(&obj, 1.0, 5.0, 0.0),
        Err(Error::NonPositive { .. })
    ));
}

#[test]
fn non_finite_evaluations_carry_the_point() {
    let f = |x: f64| x.ln();
    let obj = ScalarObjective::new((f64::NEG_INFINITY, f64::INFINITY), &f);
    match obj.eval(0.0) {
        Err(Error::NonFiniteEval { point }) => assert_eq!(point, vec![0.0]),
        other => panic!("expected NonFiniteEval, got {other:?}"),
    }
}

#[test]
fn grid_refinement_locates_an_interior_minimum() {
    let f = |x: &[f64]| (x[0] - 1.0).powi(2) + (x[1] + 2.0).powi(2);
    let (x, y) = grid_refine_min(&f, &[(-5.0, 5.0), (-5.0, 5.0)], 10, 17).unwrap();
    assert!((x[0] - 1.0).abs() <= 1e-4, "{x:?}");
    assert!((x[1] + 2.0).abs() <= 1e-4, "{x:?}");
    assert!(y <= 1e-8);
}

#[test]
fn grid_refinement_samples_bounds_exactly() {
    // Monotone objective: the minimum sits on a bound, and the boundary
    // node must be the bound itself, not a float one step inside.
    let f = |x: &[f64]| x[0];
    let (x, _) = grid_refine_min(&f, &[(2.0, 7.0)], 6, 9).unwrap();
    assert_eq!(x[0], 2.0);
    let g = |x: &[f64]| -x[0];
    let (x, _) = grid_refine_min(&g, &[(2.0, 7.0)], 6, 9).unwrap();
    assert_eq!(x[0], 7.0);
}

#[test]
fn grid_refinement_validates_inputs() {
    let f = |_: &[f64]| 0.0;
    assert!(grid_refine_min(&f, &[], 3, 9).is_err());
    assert!(grid_refine_min(&f, &[(5.0, 2.0)], 3, 9).is_err());
    assert!(grid_refine_min(&f, &[(0.0, 1.0)], 0, 9).is_err());
    assert!(grid_refine_min(&f, &[(0.0, 1.0)], 3, 1).is_err());
    let nan = |_: &[f64]| f64::NAN;
    assert!(matches!(
        grid_refine_min(&nan, &[(0.0, 1.0)], 1, 3),
        Err(Error::NonFiniteEval { .. })
    ));
}

#[test]
fn analytic_gradients_match_central_differences() {
    for (v, b, r) in [(300.0, 5.1, 2.0), (77.0, 2.5, 4.2), (1200.0, 9.0, 1.3)] {
        let (db, dr) = sym_envelope_gradient(v, b, r);
        let fb = |b: f64| 4.0 * v * r / (b * (2.0 * r - 1.0)) + b * b * (2.0 * r - 1.0);
        let fr = |r: f64| 4.0 * v * r / (b * (2.0 * r - 1.0)) + b * b * (2.0 * r - 1.0);
        assert!((db - central_diff(&fb, b)).abs() <= 1e-5 * db.abs().max(1.0));
        assert!((dr - central_diff(&fr, r)).abs() <= 1e-5 * dr.abs().max(1.0));
    }

    for (v, l1, l2, r1, r2) in
        [(200.0, 8.0, 7.0, 0.5, 0.8), (950.0, 12.0, 15.5, 0.2, 0.35)]
    {
        let g = asym_envelope_gradient(v, l1, l2, r1, r2);
        let s = |l1: f64, l2: f64, r1: f64, r2: f64| {
            let k = r1 + r2 - r1 * r2;
            l1 * l2 * k + 2.0 * v * (l1 + l2) / (l1 * l2 * k)
        };
        let fd = [
            central_diff(&|x| s(x, l2, r1, r2), l1),
            central_diff(&|x| s(l1, x, r1, r2), l2),
            central_diff(&|x| s(l1, l2, x, r2), r1),
            central_diff(&|x| s(l1, l2, r1, x), r2),
        ];
        for (a, n) in g.iter().zip(&fd) {
            assert!((a - n).abs() <= 1e-5 * a.abs().max(1.0), "{g:?} vs {fd:?}");
        }
    }

    let (v, h, k) = (200.0, 3.0, 0.9);
    for l1 in [2.0, 8.0, 20.0] {
        let slope = fixed_height_slope(v, h, k, l1);
        let f = |t: f64| v / h + 2.0 * h * (t + v / (h * k * t));
        assert!((slope - central_diff(&f, l1)).abs() <= 1e-5 * slope.abs().max(1.0));
    }
}

#[test]
fn kkt_certifies_the_interval_optimum() {
    // Reference multipliers from the closed-form dS/dr at the pinned bound.
    let bounds = RatioInterval::new(3.0, 4.0).unwrap();
    let opt = optimize_sym_fixed_ratio(200.0, SymRatio::new(3.0).unwrap()).unwrap();
    let b = match &opt.dims {
        PlanDims::Sym(d) => d.b(),
        _ => unreachable!(),
    };
    let report = kkt_check_sym(200.0, bounds, b, 3.0).unwrap();
    assert!(report.passed, "{report:?}");
    assert_eq!(report.multipliers[0].0, "r lower");
    assert!(close(report.multipliers[0].1, 17.610278660771336));
    assert_eq!(report.multipliers[1], ("r upper".to_string(), 0.0));
    assert!(report.primal_violation == 0.0);
    assert!(report.dual_violation == 0.0);
    assert!(report.slackness_residual <= 1e-8);
    assert!(report.note.is_none());

    let bounds = RatioInterval::new(2.0, 5.0).unwrap();
    let opt = optimize_sym_fixed_ratio(300.0, SymRatio::new(2.0).unwrap()).unwrap();
    let b = match &opt.dims {
        PlanDims::Sym(d) => d.b(),
        _ => unreachable!(),
    };
    let report = kkt_check_sym(300.0, bounds, b, 2.0).unwrap();
    assert!(report.passed);
    assert!(close(report.multipliers[0].1, 26.09911760779242));
}

#[test]
fn kkt_certifies_the_box_optimum() {
    let r1 = RatioInterval::new(0.3, 0.5).unwrap();
    let r2 = RatioInterval::new(0.2, 0.8).unwrap();
    let opt = optimize_asym_ratio_box(200.0, r1, r2).unwrap();
    let l = match &opt.dims {
        PlanDims::Asym(d) => d.l1(),
        _ => unreachable!(),
    };
    let report = kkt_check_asym(200.0, r1, r2, (l, l, 0.5, 0.8)).unwrap();
    assert!(report.passed, "{report:?}");
    let lams: Vec<_> = report.multipliers.iter().map(|(n, v)| (n.as_str(), *v)).collect();
    assert_eq!(lams[0].0, "r1 lower");
    assert_eq!(lams[0].1, 0.0);
    assert!(close(lams[1].1, 12.495298745211104), "{:?}", lams[1]);
    assert_eq!(lams[2].1, 0.0);
    assert!(close(lams[3].1, 31.238246863027765), "{:?}", lams[3]);
}

#[test]
fn kkt_rejects_non_optimal_candidates() {
    let bounds = RatioInterval::new(3.0, 4.0).unwrap();
    // Interior candidate with a visibly nonzero gradient.
    let report = kkt_check_sym(200.0, bounds, 5.0, 3.5).unwrap();
    assert!(!report.passed);
    assert!(report.stationarity_residual > 1e-3);
    assert_eq!(report.multipliers[0].1, 0.0);

    // Infeasible candidate: primal violation, everything else moot.
    let report = kkt_check_sym(200.0, bounds, 3.634241185664279, 4.5).unwrap();
    assert!(!report.passed);
    assert!(report.primal_violation >= 0.5 - 1e-12);

    // Right ratio, wrong width: stationarity in B fails even on the bound.
    let report = kkt_check_sym(200.0, bounds, 5.0, 3.0).unwrap();
    assert!(!report.passed);

    // A 1% nudge off the box corner must not certify.
    let r1 = RatioInterval::new(0.3, 0.5).unwrap();
    let r2 = RatioInterval::new(0.2, 0.8).unwrap();
    let opt = optimize_asym_ratio_box(200.0, r1, r2).unwrap();
    let l = match &opt.dims {
        PlanDims::Asym(d) => d.l1(),
        _ => unreachable!(),
    };
    let report = kkt_check_asym(200.0, r1, r2, (l * 1.01, l, 0.5, 0.8)).unwrap();
    assert!(!report.passed);
}

#[test]
fn kkt_flags_a_singular_active_set() {
    // An interval thinner than the proximity tolerance makes both endpoint
    // constraints read as active; the check must refuse to certify.
    let bounds = RatioInterval::new(3.0, 3.0 + 1e-10).unwrap();
    let report = kkt_check_sym(200.0, bounds, 3.634241185664279, 3.0).unwrap();
    assert!(!report.passed);
    assert!(report.note.is_some());
    assert!(ACTIVE_SET_TOL > 1e-10);
}

#[test]
fn kkt_validates_candidate_domain() {
    let bounds = RatioInterval::new(3.0, 4.0).unwrap();
    assert!(kkt_check_sym(0.0, bounds, 3.6, 3.0).is_err());
    assert!(kkt_check_sym(200.0, bounds, -1.0, 3.0).is_err());
    assert!(kkt_check_sym(200.0, bounds, 3.6, 0.5).is_err());
    let r1 = RatioInterval::new(0.3, 0.5).unwrap();
    assert!(kkt_check_asym(200.0, r1, r1, (1.0, 1.0, 0.0, 0.4)).is_err());
}

#[test]
fn default_kkt_tolerances_are_strict() {
    let tols = KktTolerances::default();
    assert_eq!(tols.stationarity, 1e-8);
    assert_eq!(tols.primal, 1e-12);
    assert_eq!(tols.dual, 1e-12);
    assert_eq!(tols.slackness, 1e-8);
    assert!(VERIFY_OBJECTIVE_RTOL <= 1e-6 && VERIFY_POINT_RTOL <= 1e-5);
}

#[test]
fn oracle_confirms_each_scenario_reference_case() {
    let cases = [
        ScenarioInput::SymFixedRatio { v: 300.0, r: 2.0 },
        ScenarioInput::SymRatioInterval { v: 200.0, lo: 3.5, hi: 4.0 },
        ScenarioInput::AsymFixedRatios { v: 300.0, r1: 0.4, r2: 0.6 },
        ScenarioInput::AsymRatioBox { v: 200.0, r1_bounds: (0.3, 0.5), r2_bounds: (0.2, 0.8) },
        ScenarioInput::AsymFixedHeight { v: 200.0, h: 3.0, r1: 0.5, r2: 0.8 },
    ];
    for case in cases {
        let cmp = verify_scenario(&case).unwrap();
        assert!(
            cmp.agrees,
            "{case:?}: point err {}, objective err {}",
            cmp.rel_error_point, cmp.rel_error_objective
        );
        assert!(cmp.rel_error_objective <= VERIFY_OBJECTIVE_RTOL);
        assert!(cmp.rel_error_point <= VERIFY_POINT_RTOL);
    }
}

#[test]
fn oracle_is_deterministic() {
    let case =
        ScenarioInput::AsymRatioBox { v: 200.0, r1_bounds: (0.3, 0.5), r2_bounds: (0.2, 0.8) };
    let a = verify_scenario(&case).unwrap();
    let b = verify_scenario(&case).unwrap();
    assert_eq!(a.numerical_value.to_bits(), b.numerical_value.to_bits());
    assert_eq!(a.numerical_point.len(), b.numerical_point.len());
    for (x, y) in a.numerical_point.iter().zip(&b.numerical_point) {
        assert_eq!(x.to_bits(), y.to_bits());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_confirms_random_sym_instances(v in 10.0f64..3000.0, r in 1.05f64..8.0) {
        let cmp = verify_scenario(&ScenarioInput::SymFixedRatio { v, r }).unwrap();
        prop_assert!(cmp.agrees, "point {}, objective {}", cmp.rel_error_point, cmp.rel_error_objective);
    }

    #[test]
    fn oracle_confirms_random_asym_instances(
        v in 10.0f64..3000.0,
        r1 in 0.05f64..0.95,
        r2 in 0.05f64..0.95,
    ) {
        let cmp = verify_scenario(&ScenarioInput::AsymFixedRatios { v, r1, r2 }).unwrap();
        prop_assert!(cmp.agrees, "point {}, objective {}", cmp.rel_error_point, cmp.rel_error_objective);
    }

    #[test]
    fn oracle_confirms_random_fixed_height_instances(
        v in 10.0f64..3000.0,
        h in 1.0f64..6.0,
        r1 in 0.05f64..0.95,
        r2 in 0.05f64..0.95,
    ) {
        let cmp = verify_scenario(&ScenarioInput::AsymFixedHeight { v, h, r1, r2 }).unwrap();
        prop_assert!(cmp.agrees, "point {}, objective {}", cmp.rel_error_point, cmp.rel_error_objective);
    }

    #[test]
    fn grid_minimum_never_beats_the_certified_optimum(
        v in 10.0f64..2000.0,
        lo in 1.05f64..8.0,
        width in 0.1f64..1.5,
    ) {
        // The numerical search runs on the raw objective, so it can approach
        // but never undercut a true minimum by more than float noise.
        let cmp = verify_scenario(&ScenarioInput::SymRatioInterval { v, lo, hi: lo + width }).unwrap();
        prop_assert!(cmp.numerical_value >= cmp.closed_form.envelope * (1.0 - 1e-12));
        prop_assert!(cmp.agrees);
    }
}
