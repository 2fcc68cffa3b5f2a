use super::{
    max_abs, system_with_jacobian, RectangleWitness, SeedCandidate, SolveError, SolverConfig,
};
use crate::curve::JordanCurve;
use crate::linalg::damped_lstsq;
use crate::scalar::{angle_diff, Real};

/// Levenberg–Marquardt damped Newton on the 4×4 system from one seed.
///
/// The damping keeps the iteration well defined where the Jacobian is rank
/// deficient, which happens on every curve with a continuous symmetry (the
/// circle's squares form a one-parameter family).
pub(crate) fn refine<T: Real>(
    curve: &JordanCurve<T>,
    seed: &SeedCandidate<T>,
    theta: T,
    cfg: &SolverConfig,
    eps_chord: T,
) -> Result<RectangleWitness<T>, SolveError> {
    let mut q = [seed.x, seed.y, seed.z, seed.w];
    if chord_len(curve, q[0], q[1]) < eps_chord || chord_len(curve, q[2], q[3]) < eps_chord {
        return Err(SolveError::DegenerateSolution(
            "seed chord has coincident endpoints",
        ));
    }
    let tol = T::lit(cfg.residual_tol);
    let polish = tol * T::lit(1e-4);
    let (mut r, mut jac, _) = system_with_jacobian(curve, q, theta);
    let mut err = max_abs(&r);
    if !err.is_finite() {
        return Err(SolveError::NoConvergence {
            residual: f64::INFINITY,
            iterations: 0,
        });
    }
    let trace: T = (0..4)
        .map(|i| (0..4).map(|k| jac[k][i] * jac[k][i]).sum::<T>())
        .sum();
    let mut lambda = T::lit(1e-6) * trace / T::lit(4.0);
    let mut iterations = 0;
    while iterations < cfg.max_iters && err > polish {
        iterations += 1;
        let neg_r = r.map(|v| -v);
        let Some(step) = damped_lstsq(&jac, &neg_r, lambda) else {
            lambda *= T::lit(10.0);
            continue;
        };
        let mut trial = q;
        for k in 0..4 {
            trial[k] += step[k];
        }
        let (tr, tj, _) = system_with_jacobian(curve, trial, theta);
        let terr = max_abs(&tr);
        if terr.is_finite() && terr < err {
            q = trial;
            r = tr;
            jac = tj;
            err = terr;
            lambda = (lambda / T::lit(10.0)).max(T::lit(1e-30));
        } else {
            if err < tol {
                break;
            }
            lambda *= T::lit(10.0);
        }
    }
    if err >= tol {
        return Err(SolveError::NoConvergence {
            residual: err.as_f64(),
            iterations,
        });
    }
    if chord_len(curve, q[0], q[1]) < eps_chord || chord_len(curve, q[2], q[3]) < eps_chord {
        return Err(SolveError::DegenerateSolution("chord collapsed to a point"));
    }
    let dedup = T::lit(cfg.dedup_tol);
    let near = |a: T, b: T| angle_diff(a, b).abs() <= dedup;
    if (near(q[0], q[2]) && near(q[1], q[3])) || (near(q[0], q[3]) && near(q[1], q[2])) {
        return Err(SolveError::DegenerateSolution(
            "both diagonals are the same chord",
        ));
    }
    Ok(RectangleWitness::build(curve, q, theta))
}

fn chord_len<T: Real>(curve: &JordanCurve<T>, a: T, b: T) -> T {
    (curve.evaluate(a) - curve.evaluate(b)).norm()
}

/// Refine one seed with the default degenerate-chord cutoff (`1e-4 · diameter`).
pub fn newton_refine<T: Real>(
    curve: &JordanCurve<T>,
    seed: &SeedCandidate<T>,
    theta: T,
    cfg: &SolverConfig,
) -> Result<RectangleWitness<T>, SolveError> {
    let eps_chord = T::lit(cfg.chord_rel) * curve.diameter();
    refine(curve, seed, theta, cfg, eps_chord)
}
