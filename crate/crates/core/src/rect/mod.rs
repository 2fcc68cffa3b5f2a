//! Inscribed rectangles as solutions of the strip self-intersection system.
//!
//! A quadruple `(x, y, z, w)` at rotation `θ` is a zero of
//!
//! ```text
//! γ(x) + γ(y) − γ(z) − γ(w)              = 0   (shared midpoint)
//! (γ(x) − γ(y))² − e^{iθ} (γ(z) − γ(w))²  = 0   (equal length, diagonals at θ/2)
//! ```
//!
//! i.e. a point where the chord strip meets its rotation by `e^{iθ}`. The
//! diagonals `{x, y}` and `{z, w}` then span a rectangle of aspect ratio
//! `tan(θ/4)`.

mod continuation;
mod newton;
mod seed;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::JordanCurve;
use crate::scalar::{angle_diff, cis, wrap_tau, Real, C};

pub use continuation::{continue_branch, Branch, BranchStop, ContinuationConfig};
pub use newton::newton_refine;
pub use seed::{seed_search, SeedIndex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("seed grid N = {0} is too small (need at least 32)")]
    SeedGridTooSmall(usize),
    #[error("no convergence: residual {residual:e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },
    #[error("degenerate solution: {0}")]
    DegenerateSolution(&'static str),
    #[error("continuation step failed at θ = {theta}: {reason}")]
    StepFailure { theta: f64, reason: &'static str },
}

/// A solved quadruple encoding an inscribed rectangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RectangleWitness<T> {
    pub x: T,
    pub y: T,
    pub z: T,
    pub w: T,
    pub theta: T,
    pub residual: T,
    /// `γ(x), γ(z), γ(y), γ(w)` in rectangle order.
    pub vertices: [C<T>; 4],
    pub aspect_ratio: T,
}

/// Coarse quadruple from the sampled chord table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeedCandidate<T> {
    pub x: T,
    pub y: T,
    pub z: T,
    pub w: T,
    pub score: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Curve samples used for seeding.
    pub seed_points: usize,
    /// Seeds refined per θ.
    pub max_seeds: usize,
    /// Stop refining once this many distinct witnesses are known.
    pub max_witnesses: usize,
    pub residual_tol: f64,
    pub max_iters: usize,
    pub dedup_tol: f64,
    /// Degenerate chord cutoff relative to the diameter.
    pub chord_rel: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            seed_points: 96,
            max_seeds: 32,
            max_witnesses: usize::MAX,
            residual_tol: 1e-10,
            max_iters: 50,
            dedup_tol: 1e-6,
            chord_rel: 1e-4,
        }
    }
}

/// `θ` folded into `[0, π]`.
pub fn fold_theta<T: Real>(theta: T) -> T {
    let t = wrap_tau(theta);
    if t > T::PI() {
        T::TAU() - t
    } else {
        t
    }
}

/// Aspect ratio `tan(θ/4)` of the folded angle.
pub fn aspect_of_theta<T: Real>(theta: T) -> T {
    (fold_theta(theta) / T::lit(4.0)).tan()
}

/// The four real components of the defining system.
pub fn residual_system<T: Real>(curve: &JordanCurve<T>, q: [T; 4], theta: T) -> [T; 4] {
    let [gx, gy, gz, gw] = q.map(|t| curve.evaluate(t));
    let a = gx + gy - gz - gw;
    let (d1, d2) = (gx - gy, gz - gw);
    let b = d1 * d1 - cis(theta) * d2 * d2;
    [a.re, a.im, b.re, b.im]
}

fn max_abs<T: Real, const N: usize>(v: &[T; N]) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

/// Residual vector together with the analytic 4×4 Jacobian in `(x, y, z, w)`
/// and the θ-derivative column.
pub fn system_with_jacobian<T: Real>(
    curve: &JordanCurve<T>,
    q: [T; 4],
    theta: T,
) -> ([T; 4], [[T; 4]; 4], [T; 4]) {
    let [jx, jy, jz, jw] = q.map(|t| curve.jet(t));
    let two = T::lit(2.0);
    let rot = cis(theta);
    let a = jx.value + jy.value - jz.value - jw.value;
    let (d1, d2) = (jx.value - jy.value, jz.value - jw.value);
    let b = d1 * d1 - rot * d2 * d2;
    let da = [jx.deriv, jy.deriv, -jz.deriv, -jw.deriv];
    let db = [
        d1 * jx.deriv * two,
        -(d1 * jy.deriv * two),
        -(rot * d2 * jz.deriv * two),
        rot * d2 * jw.deriv * two,
    ];
    let mut jac = [[T::zero(); 4]; 4];
    for k in 0..4 {
        jac[0][k] = da[k].re;
        jac[1][k] = da[k].im;
        jac[2][k] = db[k].re;
        jac[3][k] = db[k].im;
    }
    let dtheta = -(C::new(T::zero(), T::one()) * rot * d2 * d2);
    (
        [a.re, a.im, b.re, b.im],
        jac,
        [T::zero(), T::zero(), dtheta.re, dtheta.im],
    )
}

pub fn jacobian<T: Real>(curve: &JordanCurve<T>, q: [T; 4], theta: T) -> [[T; 4]; 4] {
    system_with_jacobian(curve, q, theta).1
}

impl<T: Real> RectangleWitness<T> {
    pub fn params(&self) -> [T; 4] {
        [self.x, self.y, self.z, self.w]
    }

    pub(crate) fn build(curve: &JordanCurve<T>, q: [T; 4], theta: T) -> Self {
        let q = q.map(wrap_tau);
        let r = residual_system(curve, q, theta);
        let [gx, gy, gz, gw] = q.map(|t| curve.evaluate(t));
        Self {
            x: q[0],
            y: q[1],
            z: q[2],
            w: q[3],
            theta,
            residual: max_abs(&r),
            vertices: [gx, gz, gy, gw],
            aspect_ratio: aspect_of_theta(theta),
        }
    }

    /// Side-length ratio `min/max` of the vertex quadrilateral.
    pub fn geometric_ratio(&self) -> T {
        let [a, b, c, _] = self.vertices;
        let (s1, s2) = ((b - a).norm(), (c - b).norm());
        s1.min(s2) / s1.max(s2)
    }

    /// Equal diagonals that bisect each other, within `tol`.
    pub fn is_rectangle(&self, tol: T) -> bool {
        let [a, b, c, d] = self.vertices;
        let (d1, d2) = (c - a, d - b);
        let mid = ((a + c) - (b + d)).norm() / T::lit(2.0);
        mid < tol && (d1.norm() - d2.norm()).abs() < tol
    }

    /// Whether `other` is the same rectangle labeling up to the solver's
    /// symmetries: `x↔y`, `z↔w`, and for `θ ∈ {0, π}` the chord swap.
    pub fn same_as(&self, other: &Self, tol: T) -> bool {
        if (fold_theta(self.theta) - fold_theta(other.theta)).abs() > tol {
            return false;
        }
        let near = |a: T, b: T| angle_diff(a, b).abs() <= tol;
        let pair_eq = |p: (T, T), q: (T, T)| {
            (near(p.0, q.0) && near(p.1, q.1)) || (near(p.0, q.1) && near(p.1, q.0))
        };
        let (a1, a2) = ((self.x, self.y), (self.z, self.w));
        let (b1, b2) = ((other.x, other.y), (other.z, other.w));
        if pair_eq(a1, b1) && pair_eq(a2, b2) {
            return true;
        }
        let t = fold_theta(self.theta);
        let symmetric = t <= tol || (T::PI() - t) <= tol;
        symmetric && pair_eq(a1, b2) && pair_eq(a2, b1)
    }
}

/// Reusable solver for one curve: holds the seed index and derived scales.
pub struct RectSolver<'a, T: Real> {
    curve: &'a JordanCurve<T>,
    cfg: SolverConfig,
    index: SeedIndex<T>,
    eps_chord: T,
}

impl<'a, T: Real> RectSolver<'a, T> {
    pub fn new(curve: &'a JordanCurve<T>, cfg: SolverConfig) -> Result<Self, SolveError> {
        let index = SeedIndex::new(curve, cfg.seed_points)?;
        let eps_chord = T::lit(cfg.chord_rel) * index.diameter();
        Ok(Self {
            curve,
            cfg,
            index,
            eps_chord,
        })
    }

    pub fn curve(&self) -> &JordanCurve<T> {
        self.curve
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn eps_chord(&self) -> T {
        self.eps_chord
    }

    pub fn seeds(&self, theta: T) -> Vec<SeedCandidate<T>> {
        self.index.candidates(theta)
    }

    pub fn refine(
        &self,
        seed: &SeedCandidate<T>,
        theta: T,
    ) -> Result<RectangleWitness<T>, SolveError> {
        newton::refine(self.curve, seed, theta, &self.cfg, self.eps_chord)
    }

    /// Seed, refine and deduplicate at one rotation angle.
    pub fn solve(&self, theta: T) -> Vec<RectangleWitness<T>> {
        let tol = T::lit(self.cfg.dedup_tol);
        let mut out: Vec<RectangleWitness<T>> = Vec::new();
        for seed in self.seeds(theta).iter().take(self.cfg.max_seeds) {
            if out.len() >= self.cfg.max_witnesses {
                break;
            }
            if let Ok(w) = self.refine(seed, theta) {
                if !out.iter().any(|o| o.same_as(&w, tol)) {
                    out.push(w);
                }
            }
        }
        out
    }
}

/// One-shot [`RectSolver::solve`].
pub fn solve_at_theta<T: Real>(
    curve: &JordanCurve<T>,
    theta: T,
    cfg: &SolverConfig,
) -> Result<Vec<RectangleWitness<T>>, SolveError> {
    Ok(RectSolver::new(curve, *cfg)?.solve(theta))
}

#[derive(Serialize)]
struct WitnessDump {
    theta: f64,
    r: f64,
    aspect: f64,
    params: [f64; 4],
    vertices: [[f64; 2]; 4],
    residual: f64,
}

impl<T: Real> RectangleWitness<T> {
    /// `{"theta","r","aspect","params","vertices","residual"}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        let dump = WitnessDump {
            theta: self.theta.as_f64(),
            r: fold_theta(self.theta).as_f64() / std::f64::consts::PI,
            aspect: self.aspect_ratio.as_f64(),
            params: self.params().map(|p| p.as_f64()),
            vertices: self.vertices.map(|v| [v.re.as_f64(), v.im.as_f64()]),
            residual: self.residual.as_f64(),
        };
        serde_json::to_value(dump).expect("witness serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    type Curve = JordanCurve<f64>;

    #[test]
    fn square_residual_is_zero() {
        let c = Curve::unit_circle();
        let r = residual_system(&c, [0.0, PI, FRAC_PI_2, 1.5 * PI], PI);
        assert!(max_abs(&r) < 1e-14, "{r:?}");
        let r = residual_system(&c, [0.0, PI, 0.0, PI], 0.0);
        assert!(max_abs(&r) < 1e-14);
    }

    #[test]
    fn ellipse_axis_aligned_rectangle() {
        // vertices (±√2, ±√2/2): ratio 1/2, so tan(θ/4) = 1/2
        let e = Curve::ellipse(2.0, 1.0);
        let theta = 4.0 * 0.5f64.atan();
        let q1 = [FRAC_PI_4, 5.0 * FRAC_PI_4, 3.0 * FRAC_PI_4, 7.0 * FRAC_PI_4];
        let q2 = [FRAC_PI_4, 5.0 * FRAC_PI_4, 7.0 * FRAC_PI_4, 3.0 * FRAC_PI_4];
        let best = [q1, q2]
            .iter()
            .map(|q| max_abs(&residual_system(&e, *q, theta)))
            .fold(f64::INFINITY, f64::min);
        assert!(best < 1e-14);
        let w = RectangleWitness::build(&e, q1, theta);
        assert!((w.vertices[0] - C::new(2f64.sqrt(), 0.5 * 2f64.sqrt())).norm() < 1e-14);
        assert!((w.geometric_ratio() - 0.5).abs() < 1e-12);
        assert!((w.aspect_ratio - 0.5).abs() < 1e-12);
    }

    #[test]
    fn jacobian_matches_central_differences() {
        let e = Curve::ellipse(2.0, 1.0);
        let q = [0.3, 2.9, 1.7, 4.4];
        let theta = 1.1;
        let (_, jac, jt) = system_with_jacobian(&e, q, theta);
        let h = 1e-6;
        for k in 0..4 {
            let (mut qp, mut qm) = (q, q);
            qp[k] += h;
            qm[k] -= h;
            let (rp, rm) = (
                residual_system(&e, qp, theta),
                residual_system(&e, qm, theta),
            );
            for i in 0..4 {
                let fd = (rp[i] - rm[i]) / (2.0 * h);
                assert!((fd - jac[i][k]).abs() < 1e-6 * (1.0 + jac[i][k].abs()));
            }
        }
        let (rp, rm) = (
            residual_system(&e, q, theta + h),
            residual_system(&e, q, theta - h),
        );
        for i in 0..4 {
            assert!(((rp[i] - rm[i]) / (2.0 * h) - jt[i]).abs() < 1e-6);
        }
    }

    #[test]
    fn fold_and_aspect() {
        assert!((fold_theta(1.5 * PI) - 0.5 * PI).abs() < 1e-15);
        assert!((aspect_of_theta(PI) - 1.0).abs() < 1e-15);
        assert!((aspect_of_theta(FRAC_PI_2) - (2f64.sqrt() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn symmetry_dedup() {
        let c = Curve::unit_circle();
        let a = RectangleWitness::build(&c, [0.0, PI, FRAC_PI_2, 1.5 * PI], PI);
        let b = RectangleWitness::build(&c, [PI, 0.0, 1.5 * PI, FRAC_PI_2], PI);
        let swapped = RectangleWitness::build(&c, [FRAC_PI_2, 1.5 * PI, 0.0, PI], PI);
        assert!(a.same_as(&b, 1e-6));
        assert!(a.same_as(&swapped, 1e-6));
        let near_seam = RectangleWitness::build(&c, [2.0 * PI - 1e-9, PI, FRAC_PI_2, 1.5 * PI], PI);
        assert!(a.same_as(&near_seam, 1e-6));
        let g = RectangleWitness::build(&c, [0.0, PI, 0.25 * PI, 1.25 * PI], 1.5);
        let g_swapped = RectangleWitness::build(&c, [0.25 * PI, 1.25 * PI, 0.0, PI], 1.5);
        assert!(!g.same_as(&g_swapped, 1e-6));
    }
}
