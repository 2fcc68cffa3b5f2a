//! Smooth closed plane curves as truncated Fourier series.
//!
//! A curve is the map `t ↦ Σ_{k=-K}^{K} c_k e^{ikt}` on `[0, 2π)`. The
//! parameterization need not be arc length; nothing downstream relies on it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{cis, Real, C};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("coefficient list has length {got}, expected 2K+1 = {expected}")]
    CoefficientCount { got: usize, expected: usize },
    #[error("need at least {needed} samples for order {order}, got {got}")]
    TooFewPoints {
        got: usize,
        needed: usize,
        order: usize,
    },
    #[error("Fourier fit residual {residual:e} exceeds threshold {threshold:e}")]
    FitResidual { residual: f64, threshold: f64 },
    #[error("curve failed validation: {0}")]
    Invalid(String),
    #[error("no valid curve after {0} attempts")]
    GaveUp(usize),
    #[error("decay must be non-negative and finite")]
    BadDecay,
}

/// Truncated Fourier series `Σ c_k e^{ikt}`, `k = -K..=K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JordanCurve<T> {
    order: usize,
    coeffs: Vec<C<T>>,
}

/// Position, velocity and acceleration at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet<T> {
    pub t: T,
    pub value: C<T>,
    pub deriv: C<T>,
    pub deriv2: C<T>,
}

impl<T: Real> JordanCurve<T> {
    /// Coefficients ordered `k = -K..=K`.
    pub fn new(order: usize, coeffs: Vec<C<T>>) -> Result<Self, CurveError> {
        let expected = 2 * order + 1;
        if coeffs.len() != expected {
            return Err(CurveError::CoefficientCount {
                got: coeffs.len(),
                expected,
            });
        }
        Ok(Self { order, coeffs })
    }

    pub fn unit_circle() -> Self {
        Self::ellipse(T::one(), T::one())
    }

    /// Axis-aligned ellipse with semi-axes `a` (x) and `b` (y), starting at `(a, 0)`.
    pub fn ellipse(a: T, b: T) -> Self {
        let two = T::lit(2.0);
        Self {
            order: 1,
            coeffs: vec![
                C::new((a - b) / two, T::zero()),
                C::new(T::zero(), T::zero()),
                C::new((a + b) / two, T::zero()),
            ],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    /// `c_k` for `|k| ≤ K`, zero outside.
    pub fn coeff(&self, k: i64) -> C<T> {
        let kk = self.order as i64;
        if k.abs() > kk {
            C::new(T::zero(), T::zero())
        } else {
            self.coeffs[(k + kk) as usize]
        }
    }

    /// Sums `Σ c_k (ik)^p e^{ikt}` for p = 0, 1, 2 in one pass.
    fn sums(&self, t: T) -> [C<T>; 3] {
        let z = cis(t);
        let kk = self.order;
        let mut out = [C::new(T::zero(), T::zero()); 3];
        let mut push = |k: i64, e: C<T>| {
            let c = self.coeffs[(k + kk as i64) as usize] * e;
            let kf = T::from_i64(k).unwrap();
            out[0] += c;
            out[1] += c * C::new(T::zero(), kf);
            out[2] += c * (-(kf * kf));
        };
        push(0, C::new(T::one(), T::zero()));
        let mut zp = C::new(T::one(), T::zero());
        let zc = z.conj();
        let mut zn = C::new(T::one(), T::zero());
        for k in 1..=kk as i64 {
            zp *= z;
            zn *= zc;
            push(k, zp);
            push(-k, zn);
        }
        out
    }

    pub fn evaluate(&self, t: T) -> C<T> {
        let z = cis(t);
        let kk = self.order as i64;
        let mut acc = self.coeff(0);
        let (mut zp, mut zn) = (C::new(T::one(), T::zero()), C::new(T::one(), T::zero()));
        let zc = z.conj();
        for k in 1..=kk {
            zp *= z;
            zn *= zc;
            acc += self.coeff(k) * zp + self.coeff(-k) * zn;
        }
        acc
    }

    pub fn derivative(&self, t: T) -> C<T> {
        self.sums(t)[1]
    }

    pub fn second_derivative(&self, t: T) -> C<T> {
        self.sums(t)[2]
    }

    pub fn jet(&self, t: T) -> CurveJet<T> {
        let [value, deriv, deriv2] = self.sums(t);
        CurveJet {
            t,
            value,
            deriv,
            deriv2,
        }
    }

    /// `n` points at `t_j = 2πj/n`.
    pub fn sample(&self, n: usize) -> Vec<C<T>> {
        (0..n).map(|j| self.evaluate(param(j, n))).collect()
    }

    /// Maximum pairwise distance over a 1024-point sampling.
    pub fn diameter(&self) -> T {
        let pts = self.sample(1024);
        let mut best = T::zero();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                best = best.max((pts[i] - pts[j]).norm_sqr());
            }
        }
        best.sqrt()
    }

    /// Largest curvature over `n` samples.
    pub fn max_curvature(&self, n: usize) -> T {
        (0..n)
            .map(|j| {
                let jet = self.jet(param(j, n));
                let speed = jet.deriv.norm();
                (jet.deriv.conj() * jet.deriv2).im.abs() / (speed * speed * speed)
            })
            .fold(T::zero(), T::max)
    }

    /// Whether the tangent angle is strictly monotone (a strictly convex curve).
    pub fn is_convex(&self, n: usize) -> bool {
        let signs: Vec<T> = (0..n)
            .map(|j| {
                let jet = self.jet(param(j, n));
                (jet.deriv.conj() * jet.deriv2).im
            })
            .collect();
        signs.iter().all(|s| *s > T::zero()) || signs.iter().all(|s| *s < T::zero())
    }

    pub fn validate(&self, cfg: &ValidationConfig) -> ValidationVerdict {
        validate(self, cfg)
    }

    /// Least-squares fit of order `order` to points at uniformly spaced parameters.
    ///
    /// With `n ≥ 2K+1` uniform samples the discrete exponentials are orthogonal, so
    /// the least-squares solution is the truncated DFT.
    pub fn from_samples(
        points: &[C<T>],
        order: usize,
        max_residual: Option<T>,
    ) -> Result<(Self, T), CurveError> {
        let n = points.len();
        let needed = 2 * order + 1;
        if n < needed {
            return Err(CurveError::TooFewPoints {
                got: n,
                needed,
                order,
            });
        }
        let nf = T::from_usize_lossy(n);
        let coeffs: Vec<C<T>> = (-(order as i64)..=order as i64)
            .map(|k| {
                let kf = T::from_i64(k).unwrap();
                let sum: C<T> = points
                    .iter()
                    .enumerate()
                    .map(|(j, p)| *p * cis(-kf * param::<T>(j, n)))
                    .fold(C::new(T::zero(), T::zero()), |a, b| a + b);
                sum / nf
            })
            .collect();
        let curve = Self { order, coeffs };
        let residual = points
            .iter()
            .enumerate()
            .map(|(j, p)| (curve.evaluate(param(j, n)) - *p).norm())
            .fold(T::zero(), T::max);
        if let Some(limit) = max_residual {
            if residual > limit {
                return Err(CurveError::FitResidual {
                    residual: residual.as_f64(),
                    threshold: limit.as_f64(),
                });
            }
        }
        Ok((curve, residual))
    }

    /// Random perturbation of the unit circle: `c_1 = 1`, `|c_k| ≤ decay/k²` otherwise.
    ///
    /// Draws are repeated until the curve validates; deterministic in `seed`.
    pub fn random_smooth(
        seed: u64,
        order: usize,
        decay: T,
        max_attempts: usize,
    ) -> Result<Self, CurveError> {
        if !(decay >= T::zero()) || !decay.is_finite() {
            return Err(CurveError::BadDecay);
        }
        let order = order.max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = ValidationConfig::default();
        for _ in 0..max_attempts.max(1) {
            let mut coeffs = vec![C::new(T::zero(), T::zero()); 2 * order + 1];
            for k in -(order as i64)..=order as i64 {
                if k == 0 || k == 1 {
                    continue;
                }
                let bound = decay / T::from_i64(k * k).unwrap();
                let mag = T::lit(rng.gen::<f64>()) * bound;
                let phase = T::lit(rng.gen::<f64>()) * T::TAU();
                coeffs[(k + order as i64) as usize] = cis(phase) * mag;
            }
            coeffs[order + 1] = C::new(T::one(), T::zero());
            let curve = Self { order, coeffs };
            if curve.validate(&cfg).valid {
                return Ok(curve);
            }
        }
        Err(CurveError::GaveUp(max_attempts))
    }
}

/// `2πj/n`.
#[inline]
pub fn param<T: Real>(j: usize, n: usize) -> T {
    T::TAU() * T::from_usize_lossy(j) / T::from_usize_lossy(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationConfig {
    /// Grid size `N_val`.
    pub samples: usize,
    /// Minimum parameter separation for the coincidence test, in grid steps.
    pub min_param_steps: usize,
    /// Coincidence distance δ_xy relative to the diameter.
    pub coincidence_rel: f64,
    /// Immersion threshold on `|γ'|` relative to the diameter.
    pub min_speed_rel: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            samples: 4096,
            min_param_steps: 8,
            coincidence_rel: 1e-6,
            min_speed_rel: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValidationIssue {
    MissingFundamental,
    Stationary { t: f64, speed: f64 },
    Coincident { t1: f64, t2: f64, distance: f64 },
    Crossing { t1: f64, t2: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationVerdict {
    pub valid: bool,
    pub issues: Vec<ValidationIssue>,
}

impl ValidationVerdict {
    pub fn into_result(self) -> Result<(), CurveError> {
        if self.valid {
            Ok(())
        } else {
            Err(CurveError::Invalid(format!("{:?}", self.issues.first())))
        }
    }
}

const MAX_ISSUES: usize = 16;

fn validate<T: Real>(curve: &JordanCurve<T>, cfg: &ValidationConfig) -> ValidationVerdict {
    let mut issues = Vec::new();
    if curve.coeff(1) == C::new(T::zero(), T::zero())
        && curve.coeff(-1) == C::new(T::zero(), T::zero())
    {
        issues.push(ValidationIssue::MissingFundamental);
    }
    let n = cfg.samples.max(16);
    let pts = curve.sample(n);
    let diam = pts
        .iter()
        .step_by((n / 512).max(1))
        .flat_map(|p| {
            pts.iter()
                .step_by((n / 512).max(1))
                .map(move |q| (*p - *q).norm())
        })
        .fold(T::zero(), T::max);
    if diam == T::zero() {
        issues.push(ValidationIssue::Coincident {
            t1: 0.0,
            t2: 0.0,
            distance: 0.0,
        });
        return ValidationVerdict {
            valid: false,
            issues,
        };
    }
    let min_speed = T::lit(cfg.min_speed_rel) * diam;
    for j in 0..n {
        let t = param::<T>(j, n);
        let speed = curve.derivative(t).norm();
        if speed <= min_speed && issues.len() < MAX_ISSUES {
            issues.push(ValidationIssue::Stationary {
                t: t.as_f64(),
                speed: speed.as_f64(),
            });
        }
    }

    // spatial hash: cell size is twice the longest polygon edge
    let edge_max = (0..n)
        .map(|j| (pts[(j + 1) % n] - pts[j]).norm())
        .fold(T::zero(), T::max);
    let cell = (edge_max * T::lit(2.0)).max(diam * T::lit(1e-9));
    let key = |p: C<T>| -> (i64, i64) {
        (
            (p.re / cell).floor().to_i64().unwrap_or(0),
            (p.im / cell).floor().to_i64().unwrap_or(0),
        )
    };
    let mut grid: std::collections::HashMap<(i64, i64), Vec<usize>> =
        std::collections::HashMap::new();
    for (j, p) in pts.iter().enumerate() {
        grid.entry(key(*p)).or_default().push(j);
    }
    let coincide = T::lit(cfg.coincidence_rel) * diam;
    let min_steps = cfg.min_param_steps.max(2);
    let circ = |a: usize, b: usize| -> usize {
        let d = a.abs_diff(b);
        d.min(n - d)
    };
    let mut crossing_seen = false;
    'outer: for (j, p) in pts.iter().enumerate() {
        let (cx, cy) = key(*p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(bucket) = grid.get(&(cx + dx, cy + dy)) else {
                    continue;
                };
                for &i in bucket {
                    if i <= j || circ(i, j) <= min_steps {
                        continue;
                    }
                    let d = (pts[i] - *p).norm();
                    if d < coincide {
                        issues.push(ValidationIssue::Coincident {
                            t1: param::<T>(j, n).as_f64(),
                            t2: param::<T>(i, n).as_f64(),
                            distance: d.as_f64(),
                        });
                    } else if !crossing_seen && circ(i, j) > 1 {
                        let (a0, a1) = (*p, pts[(j + 1) % n]);
                        let (b0, b1) = (pts[i], pts[(i + 1) % n]);
                        if (i + 1) % n != j && segments_cross(a0, a1, b0, b1) {
                            crossing_seen = true;
                            issues.push(ValidationIssue::Crossing {
                                t1: param::<T>(j, n).as_f64(),
                                t2: param::<T>(i, n).as_f64(),
                            });
                        }
                    }
                    if issues.len() >= MAX_ISSUES {
                        break 'outer;
                    }
                }
            }
        }
    }
    ValidationVerdict {
        valid: issues.is_empty(),
        issues,
    }
}

fn cross<T: Real>(a: C<T>, b: C<T>) -> T {
    a.re * b.im - a.im * b.re
}

/// Proper crossing of segments `[a0,a1]` and `[b0,b1]`.
pub(crate) fn segments_cross<T: Real>(a0: C<T>, a1: C<T>, b0: C<T>, b1: C<T>) -> bool {
    let d1 = cross(a1 - a0, b0 - a0);
    let d2 = cross(a1 - a0, b1 - a0);
    let d3 = cross(b1 - b0, a0 - b0);
    let d4 = cross(b1 - b0, a1 - b0);
    d1 * d2 < T::zero() && d3 * d4 < T::zero()
}
