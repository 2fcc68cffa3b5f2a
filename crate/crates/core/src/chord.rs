//! Chord space: unordered pairs of curve points mapped to
//! `(midpoint, (γ(x) − γ(y))²)` and then, after removing the radius-ε disk
//! around `w = 0`, to `ℂ × S¹ × [0, ∞)` via `(midpoint, arg w, |w| − ε)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{param, CurveError, JordanCurve, ValidationConfig};
use crate::scalar::{angle_diff, arg_tau, cis, wrap_tau, Real, C};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChordError {
    #[error("chord is degenerate: |Δ|² = {sq:e} below ε = {eps:e}")]
    DegenerateChord { sq: f64, eps: f64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("curvature {curvature:e} too extreme for ε_rel = {eps_rel:e}; supply ε manually")]
    CurvatureTooExtreme { curvature: f64, eps_rel: f64 },
    #[error("fiber φ = {phi} is not regular: degenerate tangency at t = {t}")]
    NonRegularFiber { phi: f64, t: f64 },
    #[error("fiber φ = {phi} has {count} boundary points, at most 2 are supported")]
    TooManyEndpoints { phi: f64, count: usize },
    #[error("grid resolution {0} is too small")]
    Resolution(usize),
}

/// Unordered pair `{t1, t2}` stored with `t1 ≤ t2` in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Chord<T> {
    t1: T,
    t2: T,
}

impl<T: Real> Chord<T> {
    pub fn new(a: T, b: T) -> Self {
        let (a, b) = (wrap_tau(a), wrap_tau(b));
        if a <= b {
            Self { t1: a, t2: b }
        } else {
            Self { t1: b, t2: a }
        }
    }

    pub fn t1(&self) -> T {
        self.t1
    }

    pub fn t2(&self) -> T {
        self.t2
    }

    pub fn delta(&self, curve: &JordanCurve<T>) -> C<T> {
        curve.evaluate(self.t1) - curve.evaluate(self.t2)
    }

    pub fn is_degenerate(&self, curve: &JordanCurve<T>, eps_chord: T) -> bool {
        self.delta(curve).norm() < eps_chord
    }
}

/// A point of the strip model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StripPoint<T> {
    pub midpoint: C<T>,
    pub w: C<T>,
    /// `arg w` in `[0, 2π)`.
    pub phi: T,
    /// `|w| − ε`.
    pub rho: T,
}

pub fn strip_map<T: Real>(
    curve: &JordanCurve<T>,
    chord: Chord<T>,
    eps: T,
) -> Result<StripPoint<T>, ChordError> {
    let (p, q) = (curve.evaluate(chord.t1), curve.evaluate(chord.t2));
    strip_point(p, q, eps)
}

pub(crate) fn strip_point<T: Real>(p: C<T>, q: C<T>, eps: T) -> Result<StripPoint<T>, ChordError> {
    let d = p - q;
    let w = d * d;
    let sq = d.norm_sqr();
    if sq < eps {
        return Err(ChordError::DegenerateChord {
            sq: sq.as_f64(),
            eps: eps.as_f64(),
        });
    }
    Ok(StripPoint {
        midpoint: (p + q) / T::lit(2.0),
        w,
        phi: arg_tau(w),
        rho: sq - eps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonConfig {
    pub eps_rel: f64,
    /// `√ε` must stay below this fraction of the smallest radius of curvature.
    pub feature_fraction: f64,
}

impl Default for EpsilonConfig {
    fn default() -> Self {
        Self {
            eps_rel: 1e-3,
            feature_fraction: 0.1,
        }
    }
}

/// `ε = (ε_rel · diameter)²`.
pub fn choose_epsilon<T: Real>(
    curve: &JordanCurve<T>,
    cfg: &EpsilonConfig,
) -> Result<T, ChordError> {
    curve.validate(&ValidationConfig::default()).into_result()?;
    let radius = T::lit(cfg.eps_rel) * curve.diameter();
    let kappa = curve.max_curvature(2048);
    if radius * kappa >= T::lit(cfg.feature_fraction) {
        return Err(ChordError::CurvatureTooExtreme {
            curvature: kappa.as_f64(),
            eps_rel: cfg.eps_rel,
        });
    }
    Ok(radius * radius)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiberConfig {
    /// Grid points per parameter axis.
    pub resolution: usize,
    pub eps: f64,
    pub root_tol: f64,
    /// A tangency with `|d/dt arg γ'| / |γ'|` below this is degenerate.
    pub tangency_tol: f64,
    pub allow_many_endpoints: bool,
}

impl FiberConfig {
    pub fn new(eps: f64) -> Self {
        Self {
            resolution: 1024,
            eps,
            root_tol: 1e-10,
            tangency_tol: 1e-4,
            allow_many_endpoints: false,
        }
    }
}

/// One vertex of a fiber cross-section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectionPoint<T> {
    pub midpoint: C<T>,
    pub rho: T,
    pub t1: T,
    pub t2: T,
}

/// Boundary point (`rho = 0`) of a cross-section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiberEndpoint<T> {
    /// Tangency parameter, the circular mean of `t1` and `t2`.
    pub t: T,
    pub t1: T,
    pub t2: T,
    pub midpoint: C<T>,
}

/// Slice of the curve's strip at `S¹` coordinate `phi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberSection<T> {
    pub phi: T,
    pub polylines: Vec<Vec<SectionPoint<T>>>,
    pub endpoints: Vec<FiberEndpoint<T>>,
}

#[derive(Serialize, Deserialize)]
struct FiberDump {
    phi: f64,
    polylines: Vec<Vec<[f64; 3]>>,
    endpoints: Vec<EndpointDump>,
}

#[derive(Serialize, Deserialize)]
struct EndpointDump {
    t: f64,
}

impl<T: Real> FiberSection<T> {
    /// `{"phi":…,"polylines":[[[m_re,m_im,rho],…]],"endpoints":[{"t":…},…]}`.
    pub fn to_json(&self) -> String {
        let dump = FiberDump {
            phi: self.phi.as_f64(),
            polylines: self
                .polylines
                .iter()
                .map(|pl| {
                    pl.iter()
                        .map(|p| {
                            [
                                p.midpoint.re.as_f64(),
                                p.midpoint.im.as_f64(),
                                p.rho.as_f64(),
                            ]
                        })
                        .collect()
                })
                .collect(),
            endpoints: self
                .endpoints
                .iter()
                .map(|e| EndpointDump { t: e.t.as_f64() })
                .collect(),
        };
        serde_json::to_string(&dump).expect("fiber dump serializes")
    }
}

/// Grid-based extraction of the zero set of
/// `F̃(t1,t2) = Im((γ(t1) − γ(t2)) e^{-iφ/2}) / sin((t2 − t1)/2)`
/// over the fundamental domain `t1 ≤ t2`. Dividing out the sine removes the
/// trivial zero on the diagonal; the remaining diagonal zeros are the tangency
/// parameters where `γ'` is parallel to `e^{iφ/2}`.
struct FiberGrid<'a, T: Real> {
    curve: &'a JordanCurve<T>,
    res: usize,
    pts: Vec<C<T>>,
    ders: Vec<C<T>>,
    dir: C<T>,
}

impl<'a, T: Real> FiberGrid<'a, T> {
    fn node_t(&self, i: usize) -> T {
        param(i, self.res)
    }

    fn node_value(&self, i: usize, j: usize) -> T {
        let r = self.res;
        if i == j || (i == 0 && j == r) {
            let d = self.ders[i % r] * self.dir;
            let v = -T::lit(2.0) * d.im;
            return if i == j { v } else { -v };
        }
        let p = self.pts[i % r];
        let q = self.pts[j % r];
        let h = self.node_t(j) - self.node_t(i);
        ((p - q) * self.dir).im / (h / T::lit(2.0)).sin()
    }

    fn value(&self, t1: T, t2: T) -> T {
        let h = t2 - t1;
        if h.abs() < T::lit(1e-7) {
            let m = (t1 + t2) / T::lit(2.0);
            return -T::lit(2.0) * (self.curve.derivative(m) * self.dir).im;
        }
        if (T::TAU() - h).abs() < T::lit(1e-7) {
            let m = (t1 + t2) / T::lit(2.0) - T::PI();
            return T::lit(2.0) * (self.curve.derivative(m) * self.dir).im;
        }
        let d = (self.curve.evaluate(t1) - self.curve.evaluate(t2)) * self.dir;
        d.im / (h / T::lit(2.0)).sin()
    }

    /// Canonical node under the identification `(i, R) ~ (0, i)`.
    fn canon(&self, mut n: (usize, usize)) -> (usize, usize) {
        while n.1 == self.res {
            n = (0, n.0);
        }
        n
    }

    fn coords(&self, n: (usize, usize)) -> (T, T) {
        (self.node_t(n.0), self.node_t(n.1))
    }
}

fn edge_key(a: (usize, usize), b: (usize, usize)) -> ((usize, usize), (usize, usize)) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// `(t1, t2)` coordinates of both ends of a grid edge.
type EdgeEnds<T> = ((T, T), (T, T));

/// Cross-section of the curve's strip at fiber `phi`.
pub fn fiber_section<T: Real>(
    curve: &JordanCurve<T>,
    phi: T,
    cfg: &FiberConfig,
) -> Result<FiberSection<T>, ChordError> {
    let res = cfg.resolution;
    if res < 8 {
        return Err(ChordError::Resolution(res));
    }
    let eps = T::lit(cfg.eps);
    let phi = wrap_tau(phi);
    let grid = FiberGrid {
        curve,
        res,
        pts: curve.sample(res),
        ders: (0..res).map(|j| curve.derivative(param(j, res))).collect(),
        dir: cis(-phi / T::lit(2.0)),
    };

    let mut values: Vec<Vec<T>> = Vec::with_capacity(res + 1);
    for j in 0..=res {
        values.push((0..=j).map(|i| grid.node_value(i, j)).collect());
    }
    let val = |n: (usize, usize)| values[n.1][n.0];

    // marching triangles; segments are stored as pairs of canonical edge keys
    type Key = ((usize, usize), (usize, usize));
    let mut segments: Vec<(Key, Key)> = Vec::new();
    let mut edge_coords: HashMap<Key, EdgeEnds<T>> = HashMap::new();
    let mut tri = |v: [(usize, usize); 3]| {
        let s: Vec<bool> = v.iter().map(|&n| val(n) >= T::zero()).collect();
        let mut crossings = Vec::with_capacity(2);
        for e in 0..3 {
            let (a, b) = (e, (e + 1) % 3);
            if s[a] != s[b] {
                let key = edge_key(grid.canon(v[a]), grid.canon(v[b]));
                edge_coords
                    .entry(key)
                    .or_insert_with(|| (grid.coords(v[a]), grid.coords(v[b])));
                crossings.push(key);
            }
        }
        if crossings.len() == 2 {
            segments.push((crossings[0], crossings[1]));
        }
    };
    for j in 0..res {
        for i in 0..=j {
            if i < j {
                tri([(i, j), (i + 1, j), (i + 1, j + 1)]);
            }
            tri([(i, j), (i + 1, j + 1), (i, j + 1)]);
        }
    }

    let mut adjacency: HashMap<Key, Vec<usize>> = HashMap::new();
    for (idx, (a, b)) in segments.iter().enumerate() {
        adjacency.entry(*a).or_default().push(idx);
        adjacency.entry(*b).or_default().push(idx);
    }

    // chain segments into paths of edge keys
    let mut used = vec![false; segments.len()];
    let mut chains: Vec<(Vec<Key>, bool)> = Vec::new();
    let walk = |start_seg: usize, start_key: Key, used: &mut Vec<bool>| -> (Vec<Key>, bool) {
        let mut keys = vec![start_key];
        let mut seg = start_seg;
        let mut at = start_key;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            let next = if a == at { b } else { a };
            if next == start_key {
                return (keys, true);
            }
            keys.push(next);
            at = next;
            match adjacency[&next].iter().find(|&&s| !used[s]) {
                Some(&s) => seg = s,
                None => return (keys, false),
            }
        }
    };
    let mut ends: Vec<Key> = adjacency
        .iter()
        .filter(|(_, v)| v.len() == 1)
        .map(|(k, _)| *k)
        .collect();
    ends.sort();
    for key in ends {
        let seg = adjacency[&key][0];
        if !used[seg] {
            chains.push(walk(seg, key, &mut used));
        }
    }
    for seg in 0..segments.len() {
        if !used[seg] {
            let key = segments[seg].0;
            chains.push(walk(seg, key, &mut used));
        }
    }

    // refine crossings and tangencies
    let root_tol = T::lit(cfg.root_tol);
    let refine = |key: Key| -> (T, T) {
        let (pa, pb) = edge_coords[&key];
        let f = |s: T| grid.value(pa.0 + (pb.0 - pa.0) * s, pa.1 + (pb.1 - pa.1) * s);
        let (mut lo, mut hi) = (T::zero(), T::one());
        let mut flo = f(lo);
        for _ in 0..60 {
            let mid = (lo + hi) / T::lit(2.0);
            let fm = f(mid);
            if fm.abs() < root_tol * T::lit(1e-3) {
                lo = mid;
                hi = mid;
                break;
            }
            if (fm >= T::zero()) == (flo >= T::zero()) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        let s = (lo + hi) / T::lit(2.0);
        (pa.0 + (pb.0 - pa.0) * s, pa.1 + (pb.1 - pa.1) * s)
    };

    let mut polylines = Vec::new();
    let mut endpoints = Vec::new();
    for (keys, closed) in chains {
        let params: Vec<(T, T)> = keys.iter().map(|&k| refine(k)).collect();
        // regularity at tangencies: open chain ends lie on the diagonal
        if !closed {
            for &(t1, t2) in [params[0], params[params.len() - 1]].iter() {
                let t = wrap_tau(t1 + angle_diff(t2, t1) / T::lit(2.0));
                let jet = curve.jet(t);
                let turn = (jet.deriv.conj() * jet.deriv2).im / jet.deriv.norm_sqr();
                if turn.abs() < T::lit(cfg.tangency_tol) {
                    return Err(ChordError::NonRegularFiber {
                        phi: phi.as_f64(),
                        t: t.as_f64(),
                    });
                }
            }
        }
        let mut pts: Vec<(T, T, Option<SectionPoint<T>>)> = params
            .iter()
            .map(|&(t1, t2)| {
                let p = curve.evaluate(t1);
                let q = curve.evaluate(t2);
                let sp = strip_point(p, q, eps).ok().map(|s| SectionPoint {
                    midpoint: s.midpoint,
                    rho: s.rho,
                    t1,
                    t2,
                });
                (t1, t2, sp)
            })
            .collect();
        if closed {
            match pts.iter().position(|p| p.2.is_none()) {
                None => {
                    let mut loop_pts: Vec<SectionPoint<T>> =
                        pts.iter().filter_map(|p| p.2).collect();
                    loop_pts.push(loop_pts[0]);
                    polylines.push(loop_pts);
                    continue;
                }
                Some(k) => {
                    pts.rotate_left(k);
                    let first = pts[0];
                    pts.push(first);
                }
            }
        }
        let mut current: Vec<SectionPoint<T>> = Vec::new();
        for w in pts.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            match (a.2, b.2) {
                (None, Some(_)) => {
                    let (sp, ep) = solve_endpoint(curve, &grid, (a.0, a.1), (b.0, b.1), eps);
                    current.push(sp);
                    endpoints.push(ep);
                }
                (Some(_), None) => {
                    let (sp, ep) = solve_endpoint(curve, &grid, (b.0, b.1), (a.0, a.1), eps);
                    current.push(sp);
                    endpoints.push(ep);
                    if current.len() >= 2 {
                        polylines.push(std::mem::take(&mut current));
                    }
                    current.clear();
                    continue;
                }
                _ => {}
            }
            if let Some(pb) = b.2 {
                if current.is_empty() {
                    current.push(a.2.unwrap_or(pb));
                }
                current.push(pb);
            }
        }
        if current.len() >= 2 {
            polylines.push(current);
        }
    }

    if endpoints.len() > 2 && !cfg.allow_many_endpoints {
        return Err(ChordError::TooManyEndpoints {
            phi: phi.as_f64(),
            count: endpoints.len(),
        });
    }
    Ok(FiberSection {
        phi,
        polylines,
        endpoints,
    })
}

/// Solve `Im(Δ·dir) = 0, |Δ|² = ε` by Newton from the grid bracket between an
/// outside point `a` and an inside point `b`.
fn solve_endpoint<T: Real>(
    curve: &JordanCurve<T>,
    grid: &FiberGrid<'_, T>,
    outside: (T, T),
    inside: (T, T),
    eps: T,
) -> (SectionPoint<T>, FiberEndpoint<T>) {
    // bisect |Δ|² − ε along the segment first, then polish both equations
    let sq = |t: (T, T)| (curve.evaluate(t.0) - curve.evaluate(t.1)).norm_sqr() - eps;
    let (mut lo, mut hi) = (outside, inside);
    for _ in 0..40 {
        let mid = ((lo.0 + hi.0) / T::lit(2.0), (lo.1 + hi.1) / T::lit(2.0));
        if sq(mid) >= T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (mut t1, mut t2) = hi;
    for _ in 0..20 {
        let (j1, j2) = (curve.jet(t1), curve.jet(t2));
        let d = j1.value - j2.value;
        let f = (d * grid.dir).im;
        let g = d.norm_sqr() - eps;
        if f.abs() < T::lit(1e-15) && g.abs() < eps * T::lit(1e-12) {
            break;
        }
        let a = [
            [(j1.deriv * grid.dir).im, -(j2.deriv * grid.dir).im],
            [
                T::lit(2.0) * (d.conj() * j1.deriv).re,
                -T::lit(2.0) * (d.conj() * j2.deriv).re,
            ],
        ];
        match crate::linalg::solve(a, [-f, -g], T::epsilon()) {
            Some(step) => {
                t1 += step[0];
                t2 += step[1];
            }
            None => break,
        }
    }
    let (p, q) = (curve.evaluate(t1), curve.evaluate(t2));
    let midpoint = (p + q) / T::lit(2.0);
    let rho = ((p - q).norm_sqr() - eps).max(T::zero());
    let t = wrap_tau(t1 + angle_diff(t2, t1) / T::lit(2.0));
    (
        SectionPoint {
            midpoint,
            rho: if rho < eps * T::lit(1e-6) {
                T::zero()
            } else {
                rho
            },
            t1,
            t2,
        },
        FiberEndpoint {
            t,
            t1: wrap_tau(t1),
            t2: wrap_tau(t2),
            midpoint,
        },
    )
}
