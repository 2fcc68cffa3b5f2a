use serde::{Deserialize, Serialize};

use super::{max_abs, system_with_jacobian, RectangleWitness, SolveError, SolverConfig};
use crate::curve::JordanCurve;
use crate::linalg::{damped_lstsq, numerical_rank};
use crate::scalar::{angle_diff, Real};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuationConfig {
    pub max_steps: usize,
    pub max_retries: usize,
    pub corrector_iters: usize,
    /// Upper bound on the arclength step as a multiple of `|dθ|`.
    pub max_step_factor: f64,
}

impl Default for ContinuationConfig {
    fn default() -> Self {
        Self {
            max_steps: 20_000,
            max_retries: 8,
            corrector_iters: 20,
            max_step_factor: 20.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchStop {
    /// `dθ/ds` changed sign: the branch turns back.
    Fold,
    /// Reached `θ = 0` or `θ = π` (or degenerated right next to it).
    DomainEnd,
    /// The two diagonals merged or a chord collapsed away from the ends.
    Degenerate,
    MaxSteps,
}

/// A traced solution branch in θ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch<T> {
    pub points: Vec<(T, RectangleWitness<T>)>,
    pub theta_min: T,
    pub theta_max: T,
    pub stop: BranchStop,
    pub steps: usize,
}

/// Pseudo-arclength continuation of a witness in `θ`.
///
/// The state is `u = (x, y, z, w, θ) ∈ ℝ⁵`. Tangents are the minimum-norm
/// solution of the bordered system `[J; τ_prevᵀ] τ = [0; 1]`; the corrector is
/// damped Newton on `[F(u); τ·(u − u_pred)] = 0`. A rank-3 Jacobian (one
/// continuous symmetry of the curve) is tolerated; lower rank is a failure.
pub fn continue_branch<T: Real>(
    curve: &JordanCurve<T>,
    witness: &RectangleWitness<T>,
    dtheta: T,
    solver: &SolverConfig,
    cfg: &ContinuationConfig,
) -> Result<Branch<T>, SolveError> {
    let tol = T::lit(solver.residual_tol);
    let eps_chord = T::lit(solver.chord_rel) * curve.diameter();
    let dedup = T::lit(solver.dedup_tol);
    let mut u = [witness.x, witness.y, witness.z, witness.w, witness.theta];
    let j5 = full_jacobian(curve, u);
    if numerical_rank(&j5, T::lit(1e-12)) < 3 {
        return Err(SolveError::StepFailure {
            theta: witness.theta.as_f64(),
            reason: "singular Jacobian at start",
        });
    }
    let dir = dtheta.signum();
    let mut tau = tangent(&j5, &[T::zero(), T::zero(), T::zero(), T::zero(), dir]).ok_or(
        SolveError::StepFailure {
            theta: witness.theta.as_f64(),
            reason: "no tangent",
        },
    )?;
    let mut points = vec![(witness.theta, witness.clone())];
    let h_max = dtheta.abs() * T::lit(cfg.max_step_factor);
    let mut steps = 0;
    let stop = loop {
        if steps >= cfg.max_steps {
            break BranchStop::MaxSteps;
        }
        let mut h = (dtheta.abs() / tau[4].abs().max(T::lit(1e-3))).min(h_max);
        let mut accepted = None;
        for _ in 0..=cfg.max_retries {
            let mut pred = u;
            for k in 0..5 {
                pred[k] += h * tau[k];
            }
            let end = if pred[4] < T::zero() {
                Some(T::zero())
            } else if pred[4] > T::PI() {
                Some(T::PI())
            } else {
                None
            };
            let corrected = match end {
                Some(theta_end) => {
                    let s = (theta_end - u[4]) / tau[4];
                    let mut p = u;
                    for k in 0..5 {
                        p[k] += s * tau[k];
                    }
                    p[4] = theta_end;
                    correct_fixed_theta(curve, p, tol, cfg.corrector_iters).map(|v| (v, true))
                }
                None => correct_arclength(curve, pred, &tau, tol, cfg.corrector_iters)
                    .map(|v| (v, false)),
            };
            if let Some(c) = corrected {
                accepted = Some(c);
                break;
            }
            h /= T::lit(2.0);
        }
        let Some((next, at_end)) = accepted else {
            if near_end(u[4]) {
                break BranchStop::DomainEnd;
            }
            return Err(SolveError::StepFailure {
                theta: u[4].as_f64(),
                reason: "corrector failed after retries",
            });
        };
        steps += 1;
        let q = [next[0], next[1], next[2], next[3]];
        let degenerate = chord_len(curve, q[0], q[1]) < eps_chord
            || chord_len(curve, q[2], q[3]) < eps_chord
            || same_chord(q, dedup);
        if degenerate {
            break if at_end || near_end(next[4]) {
                BranchStop::DomainEnd
            } else {
                BranchStop::Degenerate
            };
        }
        let j5 = full_jacobian(curve, next);
        let Some(new_tau) = tangent(&j5, &tau) else {
            return Err(SolveError::StepFailure {
                theta: next[4].as_f64(),
                reason: "tangent lost",
            });
        };
        u = next;
        points.push((u[4], RectangleWitness::build(curve, q, u[4])));
        if at_end {
            break BranchStop::DomainEnd;
        }
        if new_tau[4] * tau[4] < T::zero() {
            break BranchStop::Fold;
        }
        tau = new_tau;
    };
    let theta_min = points.iter().map(|p| p.0).fold(T::infinity(), T::min);
    let theta_max = points.iter().map(|p| p.0).fold(T::neg_infinity(), T::max);
    Ok(Branch {
        points,
        theta_min,
        theta_max,
        stop,
        steps,
    })
}

fn near_end<T: Real>(theta: T) -> bool {
    theta < T::lit(1e-3) || theta > T::PI() - T::lit(1e-3)
}

fn chord_len<T: Real>(curve: &JordanCurve<T>, a: T, b: T) -> T {
    (curve.evaluate(a) - curve.evaluate(b)).norm()
}

fn same_chord<T: Real>(q: [T; 4], tol: T) -> bool {
    let near = |a: T, b: T| angle_diff(a, b).abs() <= tol;
    (near(q[0], q[2]) && near(q[1], q[3])) || (near(q[0], q[3]) && near(q[1], q[2]))
}

fn full_jacobian<T: Real>(curve: &JordanCurve<T>, u: [T; 5]) -> [[T; 5]; 4] {
    let (_, j, jt) = system_with_jacobian(curve, [u[0], u[1], u[2], u[3]], u[4]);
    let mut out = [[T::zero(); 5]; 4];
    for i in 0..4 {
        out[i][..4].copy_from_slice(&j[i]);
        out[i][4] = jt[i];
    }
    out
}

fn tangent<T: Real>(j5: &[[T; 5]; 4], border: &[T; 5]) -> Option<[T; 5]> {
    let mut a = [[T::zero(); 5]; 5];
    a[..4].copy_from_slice(j5);
    a[4] = *border;
    let scale: T = a.iter().flat_map(|r| r.iter()).map(|v| *v * *v).sum();
    let t = damped_lstsq(
        &a,
        &[T::zero(), T::zero(), T::zero(), T::zero(), T::one()],
        scale * T::lit(1e-14),
    )?;
    let n = t.iter().map(|v| *v * *v).sum::<T>().sqrt();
    if !(n > T::zero()) || !n.is_finite() {
        return None;
    }
    Some(t.map(|v| v / n))
}

fn correct_arclength<T: Real>(
    curve: &JordanCurve<T>,
    pred: [T; 5],
    tau: &[T; 5],
    tol: T,
    iters: usize,
) -> Option<[T; 5]> {
    let mut u = pred;
    for _ in 0..iters {
        let (r, j, jt) = system_with_jacobian(curve, [u[0], u[1], u[2], u[3]], u[4]);
        let arc: T = (0..5).map(|k| tau[k] * (u[k] - pred[k])).sum();
        let err = max_abs(&r).max(arc.abs());
        if err < tol * T::lit(1e-2) {
            return Some(u);
        }
        let mut a = [[T::zero(); 5]; 5];
        for i in 0..4 {
            a[i][..4].copy_from_slice(&j[i]);
            a[i][4] = jt[i];
        }
        a[4] = *tau;
        let rhs = [-r[0], -r[1], -r[2], -r[3], -arc];
        let step = damped_lstsq(&a, &rhs, T::lit(1e-14))?;
        for k in 0..5 {
            u[k] += step[k];
        }
    }
    let (r, _, _) = system_with_jacobian(curve, [u[0], u[1], u[2], u[3]], u[4]);
    (max_abs(&r) < tol).then_some(u)
}

fn correct_fixed_theta<T: Real>(
    curve: &JordanCurve<T>,
    start: [T; 5],
    tol: T,
    iters: usize,
) -> Option<[T; 5]> {
    let mut q = [start[0], start[1], start[2], start[3]];
    let theta = start[4];
    for _ in 0..iters {
        let (r, j, _) = system_with_jacobian(curve, q, theta);
        if max_abs(&r) < tol * T::lit(1e-2) {
            break;
        }
        let step = damped_lstsq(&j, &r.map(|v| -v), T::lit(1e-14))?;
        for k in 0..4 {
            q[k] += step[k];
        }
    }
    let (r, _, _) = system_with_jacobian(curve, q, theta);
    (max_abs(&r) < tol).then_some([q[0], q[1], q[2], q[3], theta])
}
