//! The realized aspect-ratio set `X ⊆ [0, 1]` of a curve.
//!
//! A uniform grid `θ_i = π·i/n` (`i = 1..=n`) is solved in parallel. Gaps in
//! existence are bisected down to `δ_θ`, maximal witnessed runs become arcs in
//! `r = θ/π`, and the measure is the total confirmed (inner) length.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{CurveError, JordanCurve, ValidationConfig};
use crate::rect::{
    continue_branch, fold_theta, BranchStop, ContinuationConfig, RectSolver, RectangleWitness,
    SeedCandidate, SolveError, SolverConfig,
};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Solver(#[from] SolveError),
    #[error("value {0} outside [0, 1]")]
    Domain(f64),
    #[error("grid size {0} is below 32")]
    GridTooSmall(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumConfig {
    pub grid: usize,
    /// Bisection resolution in θ (radians).
    pub dtheta: f64,
    pub solver: SolverConfig,
    /// Fill unwitnessed grid points by refining a neighbour's witness.
    pub warm_start: bool,
    /// Extend arc ends by continuing the boundary witness into the gap.
    pub sharpen: bool,
    /// Sweep `2π − θ` instead of `θ`.
    pub mirror: bool,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self {
            grid: 256,
            dtheta: std::f64::consts::PI * 1e-3,
            solver: SolverConfig::default(),
            warm_start: true,
            sharpen: false,
            mirror: false,
        }
    }
}

impl SpectrumConfig {
    pub fn delta_r(&self) -> f64 {
        self.dtheta / std::f64::consts::PI
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSample<T> {
    /// Folded angle in `(0, π]`.
    pub theta: T,
    pub r: T,
    pub witness: Option<RectangleWitness<T>>,
}

impl<T: Real> GridSample<T> {
    pub fn witnessed(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumArc<T> {
    pub r_lo: T,
    pub r_hi: T,
    pub witness: RectangleWitness<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport<T> {
    pub curve_id: String,
    pub arcs: Vec<SpectrumArc<T>>,
    pub measure: T,
    pub grid: usize,
    pub delta_r: T,
    /// Grid and bisection samples sorted by θ.
    pub samples: Vec<GridSample<T>>,
    /// Gaps of width `≤ δ_r` between a witnessed and an unwitnessed sample.
    pub unresolved: Vec<[T; 2]>,
    pub verdict: bool,
    pub config: SpectrumConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorollaryVerdict {
    pub measure: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// `measure ≥ 1/3 − δ_r·arcs`.
pub fn corollary_verdict(measure: f64, arc_count: usize, delta_r: f64) -> CorollaryVerdict {
    let threshold = 1.0 / 3.0 - delta_r * arc_count as f64;
    CorollaryVerdict {
        measure,
        threshold,
        pass: measure >= threshold,
    }
}

pub fn corollary_check<T: Real>(report: &SpectrumReport<T>) -> CorollaryVerdict {
    corollary_verdict(
        report.measure.as_f64(),
        report.arcs.len(),
        report.delta_r.as_f64(),
    )
}

/// `tan(rπ/4)`.
pub fn to_aspect_ratio<T: Real>(r: T) -> Result<T, SpectrumError> {
    if !(r >= T::zero() && r <= T::one()) {
        return Err(SpectrumError::Domain(r.as_f64()));
    }
    Ok((r * T::FRAC_PI_4()).tan())
}

/// `(4/π)·arctan(ratio)`.
pub fn to_r<T: Real>(ratio: T) -> Result<T, SpectrumError> {
    if !(ratio >= T::zero() && ratio <= T::one()) {
        return Err(SpectrumError::Domain(ratio.as_f64()));
    }
    Ok(ratio.atan() / T::FRAC_PI_4())
}

struct Sweep<'a, T: Real> {
    solver: RectSolver<'a, T>,
    mirror: bool,
}

impl<T: Real> Sweep<'_, T> {
    fn angle(&self, theta: T) -> T {
        if self.mirror {
            T::TAU() - theta
        } else {
            theta
        }
    }

    fn solve(&self, theta: T) -> Option<RectangleWitness<T>> {
        best(self.solver.solve(self.angle(theta)))
    }

    fn warm(&self, from: &RectangleWitness<T>, theta: T) -> Option<RectangleWitness<T>> {
        let seed = SeedCandidate {
            x: from.x,
            y: from.y,
            z: from.z,
            w: from.w,
            score: T::zero(),
        };
        self.solver.refine(&seed, self.angle(theta)).ok()
    }

    fn probe(&self, theta: T, near: Option<&RectangleWitness<T>>) -> Option<RectangleWitness<T>> {
        near.and_then(|w| self.warm(w, theta))
            .or_else(|| self.solve(theta))
    }
}

fn best<T: Real>(ws: Vec<RectangleWitness<T>>) -> Option<RectangleWitness<T>> {
    ws.into_iter()
        .min_by(|a, b| a.residual.partial_cmp(&b.residual).unwrap())
}

pub fn compute_spectrum<T: Real>(
    curve: &JordanCurve<T>,
    curve_id: &str,
    cfg: &SpectrumConfig,
) -> Result<SpectrumReport<T>, SpectrumError> {
    if cfg.grid < 32 {
        return Err(SpectrumError::GridTooSmall(cfg.grid));
    }
    curve.validate(&ValidationConfig::default()).into_result()?;
    let solver_cfg = SolverConfig {
        max_witnesses: 1,
        ..cfg.solver
    };
    let sweep = Sweep {
        solver: RectSolver::new(curve, solver_cfg)?,
        mirror: cfg.mirror,
    };
    let n = cfg.grid;
    let pi = T::PI();
    let thetas: Vec<T> = (1..=n)
        .map(|i| pi * T::from_usize_lossy(i) / T::from_usize_lossy(n))
        .collect();
    let mut found: Vec<Option<RectangleWitness<T>>> =
        thetas.par_iter().map(|&t| sweep.solve(t)).collect();

    if cfg.warm_start {
        loop {
            let mut changed = false;
            for i in 0..n {
                if found[i].is_none() && i > 0 {
                    if let Some(w) = found[i - 1].clone().and_then(|w| sweep.warm(&w, thetas[i])) {
                        found[i] = Some(w);
                        changed = true;
                    }
                }
            }
            for i in (0..n).rev() {
                if found[i].is_none() && i + 1 < n {
                    if let Some(w) = found[i + 1].clone().and_then(|w| sweep.warm(&w, thetas[i])) {
                        found[i] = Some(w);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    // θ = 0 carries only degenerate chord pairs: a virtual unwitnessed sample.
    let mut grid: Vec<(T, Option<RectangleWitness<T>>)> = Vec::with_capacity(n + 1);
    grid.push((T::zero(), None));
    grid.extend(thetas.iter().copied().zip(found));

    let dtheta = T::lit(cfg.dtheta);
    let refinements: Vec<Vec<(T, Option<RectangleWitness<T>>)>> = grid
        .par_windows(2)
        .map(|pair| {
            let (a, b) = (&pair[0], &pair[1]);
            if a.1.is_some() == b.1.is_some() {
                return Vec::new();
            }
            bisect(&sweep, a.clone(), b.clone(), dtheta)
        })
        .collect();
    let mut samples: Vec<(T, Option<RectangleWitness<T>>)> = grid;
    samples.extend(refinements.into_iter().flatten());
    samples.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    if cfg.sharpen {
        sharpen(curve, &sweep, &mut samples, dtheta);
    }

    let mut arcs = Vec::new();
    let mut unresolved = Vec::new();
    let mut i = 0;
    while i < samples.len() {
        if samples[i].1.is_none() {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < samples.len() && samples[i + 1].1.is_some() {
            i += 1;
        }
        let (lo, hi) = (samples[start].0 / pi, samples[i].0 / pi);
        let witness = samples[start..=i]
            .iter()
            .filter_map(|s| s.1.as_ref())
            .min_by(|a, b| a.residual.partial_cmp(&b.residual).unwrap())
            .expect("run has a witness")
            .clone();
        if start > 0 {
            unresolved.push([samples[start - 1].0 / pi, lo]);
        }
        if i + 1 < samples.len() {
            unresolved.push([hi, samples[i + 1].0 / pi]);
        }
        arcs.push(SpectrumArc {
            r_lo: lo,
            r_hi: hi,
            witness,
        });
        i += 1;
    }
    let measure = arcs.iter().fold(T::zero(), |m, a| m + (a.r_hi - a.r_lo));
    let delta_r = T::lit(cfg.delta_r());
    let samples: Vec<GridSample<T>> = samples
        .into_iter()
        .skip(1)
        .map(|(theta, witness)| GridSample {
            theta,
            r: theta / pi,
            witness,
        })
        .collect();
    let verdict = corollary_verdict(measure.as_f64(), arcs.len(), delta_r.as_f64()).pass;
    Ok(SpectrumReport {
        curve_id: curve_id.to_string(),
        arcs,
        measure,
        grid: n,
        delta_r,
        samples,
        unresolved,
        verdict,
        config: *cfg,
    })
}

/// Samples strictly between `a` and `b` (statuses differ) until the
/// witnessed/unwitnessed boundary is bracketed within `dtheta`.
fn bisect<T: Real>(
    sweep: &Sweep<'_, T>,
    a: (T, Option<RectangleWitness<T>>),
    b: (T, Option<RectangleWitness<T>>),
    dtheta: T,
) -> Vec<(T, Option<RectangleWitness<T>>)> {
    let (mut good, mut bad) = if a.1.is_some() { (a, b) } else { (b, a) };
    let mut out = Vec::new();
    while (good.0 - bad.0).abs() > dtheta {
        let mid = (good.0 + bad.0) / T::lit(2.0);
        let w = sweep.probe(mid, good.1.as_ref());
        let s = (mid, w);
        out.push(s.clone());
        if s.1.is_some() {
            good = s;
        } else {
            bad = s;
        }
    }
    out
}

/// Continue each arc's boundary witness towards the neighbouring gap and
/// insert the confirmed branch points that land inside it.
fn sharpen<T: Real>(
    curve: &JordanCurve<T>,
    sweep: &Sweep<'_, T>,
    samples: &mut Vec<(T, Option<RectangleWitness<T>>)>,
    dtheta: T,
) {
    let solver = *sweep.solver.config();
    let ccfg = ContinuationConfig {
        max_steps: 400,
        ..Default::default()
    };
    let mut extra = Vec::new();
    for i in 0..samples.len() {
        let Some(w) = samples[i].1.as_ref() else {
            continue;
        };
        for (j, dir) in [(i.wrapping_sub(1), -T::one()), (i + 1, T::one())] {
            let Some(next) = samples.get(j) else { continue };
            if next.1.is_some() {
                continue;
            }
            let step = dir * dtheta / T::lit(8.0);
            let Ok(branch) = continue_branch(
                curve,
                w,
                if sweep.mirror { -step } else { step },
                &solver,
                &ccfg,
            ) else {
                continue;
            };
            if branch.stop == BranchStop::MaxSteps && branch.points.len() < 2 {
                continue;
            }
            let (lo, hi) = if samples[i].0 < next.0 {
                (samples[i].0, next.0)
            } else {
                (next.0, samples[i].0)
            };
            for (theta, pw) in branch.points.iter().skip(1) {
                let f = fold_theta(*theta);
                if f > lo && f < hi {
                    extra.push((f, Some(pw.clone())));
                }
            }
        }
    }
    samples.extend(extra);
    samples.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
}

impl<T: Real> SpectrumReport<T> {
    /// Plot data: `r,witnessed,residual` per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,witnessed,residual\n");
        for s in &self.samples {
            let (flag, res) = match &s.witness {
                Some(w) => (1, format!("{:e}", w.residual.as_f64())),
                None => (0, String::new()),
            };
            out.push_str(&format!("{},{},{}\n", s.r.as_f64(), flag, res));
        }
        out
    }

    /// Report JSON with witnesses in the witness dump layout.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "curve": self.curve_id,
            "measure": self.measure.as_f64(),
            "grid": self.grid,
            "delta_r": self.delta_r.as_f64(),
            "verdict": self.verdict,
            "arcs": self.arcs.iter().map(|a| serde_json::json!({
                "r": [a.r_lo.as_f64(), a.r_hi.as_f64()],
                "witness": a.witness.to_json_value(),
            })).collect::<Vec<_>>(),
            "unresolved": self.unresolved.iter().map(|u| [u[0].as_f64(), u[1].as_f64()]).collect::<Vec<_>>(),
            "witnessed_samples": self.samples.iter().filter(|s| s.witnessed()).count(),
            "samples": self.samples.len(),
            "config": self.config,
        })
    }

    /// `{u ∈ S¹ : M ∩ u·M ≠ ∅}` on the witnessed arcs, in turns (`θ/2π`),
    /// including the mirrored half.
    pub fn intersection_set(&self) -> crate::circle_sets::ArcSet<f64> {
        use crate::circle_sets::{Arc, ArcSet};
        let mut arcs = Vec::new();
        for a in &self.arcs {
            let (lo, hi) = (a.r_lo.as_f64() / 2.0, a.r_hi.as_f64() / 2.0);
            arcs.push(Arc::closed(lo, hi));
            arcs.push(Arc::closed(1.0 - hi, 1.0 - lo));
        }
        ArcSet::new(arcs)
    }
}
