mod common;

use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use rectspec_core::corpus::{builtin_curve, CURVES};
use rectspec_core::rect::{
    continue_branch, jacobian, residual_system, solve_at_theta, BranchStop, ContinuationConfig,
    RectSolver, SolverConfig,
};
use rectspec_core::{Curve, CurveF32};

use common::{fd_jacobian, theta_grid, QuadrupleGrid};

fn corpus_curve() -> impl Strategy<Value = Curve> {
    prop::sample::select(CURVES.to_vec()).prop_map(|n| builtin_curve(n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobian_matches_finite_differences(c in corpus_curve(), q in prop::array::uniform4(0.0f64..TAU), theta in 0.0f64..PI) {
        let an = jacobian(&c, q, theta);
        let fd = fd_jacobian(|p| residual_system(&c, p, theta), q, 1e-6);
        let scale = an.iter().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
        for (a, b) in an.iter().flatten().zip(fd.iter().flatten()) {
            prop_assert!((a - b).abs() / scale < 1e-6);
        }
    }

    #[test]
    fn witnesses_are_inscribed_rectangles(c in corpus_curve(), r in 0.02f64..1.0) {
        let theta = PI * r;
        let ws = solve_at_theta(&c, theta, &SolverConfig::default()).unwrap();
        prop_assert!(!ws.is_empty());
        for w in &ws {
            prop_assert!(w.residual < 1e-10);
            prop_assert!(w.is_rectangle(1e-8));
            prop_assert!((w.geometric_ratio() - (theta / 4.0).tan()).abs() < 1e-6);
            for (v, t) in w.vertices.iter().zip([w.x, w.z, w.y, w.w]) {
                prop_assert!((c.evaluate(t) - v).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn solver_is_rotation_equivariant_on_the_circle(shift in 0.0f64..TAU, r in 0.05f64..1.0) {
        // every rectangle with circumradius 1 is inscribed in the unit circle
        let c = Curve::unit_circle();
        let ws = solve_at_theta(&c, PI * r, &SolverConfig::default()).unwrap();
        prop_assert!(!ws.is_empty());
        let w = &ws[0];
        let moved = residual_system(&c, w.params().map(|t| t + shift), w.theta);
        prop_assert!(moved.iter().all(|v| v.abs() < 1e-10));
    }
}

#[test]
fn solver_agrees_with_brute_force_grid() {
    for name in CURVES {
        let c = builtin_curve(name).unwrap();
        let grid = QuadrupleGrid::new(&c, 200);
        let solver = RectSolver::new(&c, SolverConfig::default()).unwrap();
        for theta in theta_grid(64) {
            let found = !solver.solve(theta).is_empty();
            assert_eq!(found, grid.exists(theta), "{name} at θ = {theta}");
        }
    }
}

#[test]
fn ellipse_branch_covers_the_range() {
    let e = Curve::ellipse(2.0, 1.0);
    let start = solve_at_theta(&e, PI, &SolverConfig::default())
        .unwrap()
        .remove(0);
    let b = continue_branch(
        &e,
        &start,
        -0.01,
        &SolverConfig::default(),
        &ContinuationConfig::default(),
    )
    .unwrap();
    assert_ne!(b.stop, BranchStop::MaxSteps);
    assert!(
        b.theta_max - b.theta_min > 0.5,
        "{:?} {} {}",
        b.stop,
        b.theta_min,
        b.theta_max
    );
}

#[test]
fn single_precision_square() {
    let c = CurveF32::unit_circle();
    let cfg = SolverConfig {
        residual_tol: 1e-5,
        ..SolverConfig::default()
    };
    let ws = solve_at_theta(&c, std::f32::consts::PI, &cfg).unwrap();
    assert!(!ws.is_empty());
    assert!(ws.iter().all(|w| (w.geometric_ratio() - 1.0).abs() < 1e-4));
}
