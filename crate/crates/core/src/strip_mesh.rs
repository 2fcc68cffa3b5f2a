//! Triangulated Möbius strips in `ℂ × S¹ × [0, ∞)`.
//!
//! A vertex is `(midpoint, phi, rho)`. Triangles may straddle the `phi = 2π`
//! seam; [`StripMesh::triangle_points`] unwraps their angles around the first
//! vertex so every triangle lives in one chart of `ℝ⁴`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{CurveError, JordanCurve, ValidationConfig};
use crate::scalar::{angle_diff, arg_tau, cis, wrap_tau, Real, C};
use crate::torus::{loop_winding, Winding};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeshError {
    #[error("mesh resolution {0} is too coarse (need an even value ≥ 8)")]
    Resolution(usize),
    #[error("dome apex height must be positive, got {0}")]
    ApexHeight(f64),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("ε-collar not resolved at s = {0}: chords never reach |Δ|² = ε")]
    Collar(f64),
    #[error("invalid mesh: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshVertex<T> {
    pub midpoint: C<T>,
    pub phi: T,
    pub rho: T,
}

/// `vertices`, `triangles` and the ordered `boundary` loop at `rho = 0`.
/// The `S¹` action is stored as an angle added to every vertex's `phi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StripMesh<T> {
    vertices: Vec<MeshVertex<T>>,
    triangles: Vec<[usize; 3]>,
    boundary: Vec<usize>,
    shift: T,
}

/// Manifold and boundary bookkeeping of a mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshCheck {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    /// Every edge lies on one or two triangles.
    pub manifold: bool,
    pub boundary_components: usize,
    /// Winding of the stored boundary loop.
    pub boundary_winding: Winding,
    pub boundary_on_rho_zero: bool,
}

impl MeshCheck {
    /// Euler characteristic 0, manifold, one boundary loop at `rho = 0`.
    pub fn is_strip(&self) -> bool {
        self.euler == 0
            && self.manifold
            && self.boundary_components == 1
            && self.boundary_on_rho_zero
    }
}

impl<T: Real> StripMesh<T> {
    pub fn new(
        vertices: Vec<MeshVertex<T>>,
        triangles: Vec<[usize; 3]>,
        boundary: Vec<usize>,
    ) -> Result<Self, MeshError> {
        let n = vertices.len();
        if let Some(t) = triangles
            .iter()
            .find(|t| t.iter().any(|&i| i >= n) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
        {
            return Err(MeshError::Invalid(format!("bad triangle {t:?}")));
        }
        if boundary.iter().any(|&i| i >= n) {
            return Err(MeshError::Invalid("boundary index out of range".into()));
        }
        if vertices
            .iter()
            .any(|v| !(v.rho >= T::zero()) || !v.phi.is_finite())
        {
            return Err(MeshError::Invalid(
                "vertex with negative or non-finite coordinates".into(),
            ));
        }
        let vertices = vertices
            .into_iter()
            .map(|v| MeshVertex {
                phi: wrap_tau(v.phi),
                ..v
            })
            .collect();
        Ok(Self {
            vertices,
            triangles,
            boundary,
            shift: T::zero(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex with the `S¹` action applied; `phi ∈ [0, 2π)`.
    pub fn vertex(&self, i: usize) -> MeshVertex<T> {
        let v = self.vertices[i];
        MeshVertex {
            phi: wrap_tau(v.phi + self.shift),
            ..v
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = MeshVertex<T>> + '_ {
        (0..self.vertices.len()).map(|i| self.vertex(i))
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    /// The triangle's corners in `ℝ⁴ = (re m, im m, phi, rho)` with `phi`
    /// unwrapped around the first corner.
    pub fn triangle_points(&self, t: usize) -> [[T; 4]; 3] {
        let [a, b, c] = self.triangles[t].map(|i| self.vertex(i));
        let p0 = a.phi;
        let pt = |v: MeshVertex<T>, phi: T| [v.midpoint.re, v.midpoint.im, phi, v.rho];
        [
            pt(a, p0),
            pt(b, p0 + angle_diff(b.phi, p0)),
            pt(c, p0 + angle_diff(c.phi, p0)),
        ]
    }

    /// Longest triangle edge in `ℝ⁴`.
    pub fn max_edge_length(&self) -> T {
        (0..self.triangles.len())
            .flat_map(|t| {
                let p = self.triangle_points(t);
                [(0, 1), (1, 2), (2, 0)].map(|(i, j)| dist4(&p[i], &p[j]))
            })
            .fold(T::zero(), T::max)
    }

    pub fn check(&self) -> MeshCheck {
        let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &self.triangles {
            for (i, j) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                *edges.entry((i.min(j), i.max(j))).or_default() += 1;
            }
        }
        let manifold = edges.values().all(|&c| c == 1 || c == 2);
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for (&(i, j), &c) in &edges {
            if c == 1 {
                adj.entry(i).or_default().push(j);
                adj.entry(j).or_default().push(i);
            }
        }
        let mut seen = std::collections::HashSet::new();
        let mut components = 0;
        let mut starts: Vec<usize> = adj.keys().copied().collect();
        starts.sort_unstable();
        for s in starts {
            if !seen.insert(s) {
                continue;
            }
            components += 1;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
        }
        let used: std::collections::HashSet<usize> =
            self.triangles.iter().flatten().copied().collect();
        let (v, e, f) = (used.len(), edges.len(), self.triangles.len());
        let tol = T::lit(1e-12);
        MeshCheck {
            vertices: v,
            edges: e,
            faces: f,
            euler: v as i64 - e as i64 + f as i64,
            manifold,
            boundary_components: components,
            boundary_winding: self.boundary_winding(),
            boundary_on_rho_zero: self
                .boundary
                .iter()
                .all(|&i| self.vertices[i].rho.abs() <= tol),
        }
    }

    /// `(phi, g)` winding of the boundary loop, `g` measured around the mean
    /// boundary midpoint.
    pub fn boundary_winding(&self) -> Winding {
        let pts: Vec<(C<T>, T)> = self
            .boundary
            .iter()
            .map(|&i| self.vertex(i))
            .map(|v| (v.midpoint, v.phi))
            .collect();
        if pts.is_empty() {
            return Winding { phi: 0, g: 0 };
        }
        let center = pts
            .iter()
            .fold(C::new(T::zero(), T::zero()), |s, p| s + p.0)
            / T::from_usize_lossy(pts.len());
        loop_winding(&pts, center)
    }

    /// `{"vertices":[[m_re,m_im,phi,rho],...],"triangles":[[i,j,k],...],"boundary":[i,...]}`.
    pub fn to_json(&self) -> String {
        let dump = MeshDump {
            vertices: self
                .vertices()
                .map(|v| {
                    [
                        v.midpoint.re.as_f64(),
                        v.midpoint.im.as_f64(),
                        v.phi.as_f64(),
                        v.rho.as_f64(),
                    ]
                })
                .collect(),
            triangles: self.triangles.clone(),
            boundary: self.boundary.clone(),
        };
        serde_json::to_string(&dump).expect("mesh serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, MeshError> {
        let dump: MeshDump =
            serde_json::from_str(text).map_err(|e| MeshError::Invalid(e.to_string()))?;
        let vertices = dump
            .vertices
            .into_iter()
            .map(|[a, b, phi, rho]| MeshVertex {
                midpoint: C::new(T::lit(a), T::lit(b)),
                phi: T::lit(phi),
                rho: T::lit(rho),
            })
            .collect();
        Self::new(vertices, dump.triangles, dump.boundary)
    }

    /// Cross-section at fiber `phi` as polylines in `(re m, im m, rho)`.
    pub fn slice(&self, phi: T) -> Vec<Polyline<T>> {
        slice_mesh(self, wrap_tau(phi))
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct MeshDump {
    vertices: Vec<[f64; 4]>,
    triangles: Vec<[usize; 3]>,
    boundary: Vec<usize>,
}

/// `phi ← phi + arg u` on every vertex.
pub fn rotate_strip<T: Real>(mesh: &StripMesh<T>, u: C<T>) -> StripMesh<T> {
    rotate_strip_by(mesh, u.im.atan2(u.re))
}

/// Rotation by the angle `theta`.
pub fn rotate_strip_by<T: Real>(mesh: &StripMesh<T>, theta: T) -> StripMesh<T> {
    StripMesh {
        shift: mesh.shift + theta,
        ..mesh.clone()
    }
}

/// Smallest `h > 0` with `|γ(s + h/2) − γ(s − h/2)|² = eps`.
fn collar_height<T: Real>(curve: &JordanCurve<T>, s: T, eps: T) -> Option<T> {
    let two = T::lit(2.0);
    let f = |h: T| (curve.evaluate(s + h / two) - curve.evaluate(s - h / two)).norm_sqr() - eps;
    let mut hi = T::lit(1e-8);
    while f(hi) < T::zero() {
        hi *= two;
        if hi > T::PI() {
            return if f(T::PI()) >= T::zero() {
                bisect_root(&f, hi / two, T::PI())
            } else {
                None
            };
        }
    }
    bisect_root(&f, T::zero(), hi)
}

fn bisect_root<T: Real>(f: &impl Fn(T) -> T, mut lo: T, mut hi: T) -> Option<T> {
    for _ in 0..200 {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(hi)
}

/// Mesh of the curve's chord strip over `(s, h)`, `s` the mean parameter and
/// `h ∈ [h_min(s), π]` the parameter gap, so that `{s − h/2, s + h/2}` runs
/// over unordered pairs; `(s, π) ~ (s + π, π)` closes it into a Möbius strip
/// whose boundary is the `|Δ|² = ε` ring.
pub fn mesh_from_curve<T: Real>(
    curve: &JordanCurve<T>,
    eps: T,
    resolution: usize,
) -> Result<StripMesh<T>, MeshError> {
    if resolution < 8 || !resolution.is_multiple_of(2) {
        return Err(MeshError::Resolution(resolution));
    }
    curve.validate(&ValidationConfig::default()).into_result()?;
    let r = resolution;
    let levels = (r / 4).max(4);
    let half = r / 2;
    let two = T::lit(2.0);
    let mut vertices = Vec::with_capacity(r * levels + half);
    let mut hmins = Vec::with_capacity(r);
    for i in 0..r {
        let s = T::TAU() * T::from_usize_lossy(i) / T::from_usize_lossy(r);
        let h = collar_height(curve, s, eps).ok_or(MeshError::Collar(s.as_f64()))?;
        if h >= T::PI() / two {
            return Err(MeshError::Collar(s.as_f64()));
        }
        hmins.push(h);
    }
    let spacing = T::PI() / T::from_usize_lossy(levels);
    if hmins.iter().any(|&h| h >= spacing) {
        return Err(MeshError::Resolution(resolution));
    }
    for j in 0..levels {
        for (i, &hmin) in hmins.iter().enumerate() {
            let s = T::TAU() * T::from_usize_lossy(i) / T::from_usize_lossy(r);
            let h = hmin + (T::PI() - hmin) * T::from_usize_lossy(j) / T::from_usize_lossy(levels);
            let mut v = chord_vertex(
                curve.evaluate(s - h / two),
                curve.evaluate(s + h / two),
                eps,
            );
            if j == 0 {
                v.rho = T::zero();
            }
            vertices.push(v);
        }
    }
    for i in 0..half {
        let s = T::TAU() * T::from_usize_lossy(i) / T::from_usize_lossy(r);
        let h = T::PI();
        vertices.push(chord_vertex(
            curve.evaluate(s - h / two),
            curve.evaluate(s + h / two),
            eps,
        ));
    }
    let idx = |i: usize, j: usize| {
        if j == levels {
            levels * r + (i % r) % half
        } else {
            j * r + i % r
        }
    };
    let mut triangles = Vec::with_capacity(2 * r * levels);
    for j in 0..levels {
        for i in 0..r {
            let (v00, v10, v01, v11) = (idx(i, j), idx(i + 1, j), idx(i, j + 1), idx(i + 1, j + 1));
            triangles.push([v00, v10, v11]);
            triangles.push([v00, v11, v01]);
        }
    }
    let boundary = (0..r).map(|i| idx(i, 0)).collect();
    StripMesh::new(vertices, triangles, boundary)
}

/// Synthetic strip: over fiber `v = e^{iφ}` the section is the segment
/// `s·√(v/u)`, `s ∈ [−1, 1]`, lifted to height `apex·(1 − s²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomeStrip<T> {
    pub apex_height: T,
    pub rotation: C<T>,
}

impl<T: Real> DomeStrip<T> {
    pub fn new(apex_height: T, rotation: C<T>) -> Result<Self, MeshError> {
        if !(apex_height > T::zero()) {
            return Err(MeshError::ApexHeight(apex_height.as_f64()));
        }
        Ok(Self {
            apex_height,
            rotation: rotation / rotation.norm(),
        })
    }

    pub fn height(&self, s: T) -> T {
        self.apex_height * (T::one() - s * s)
    }

    /// Unit direction of the section line over fiber `phi`.
    pub fn direction(&self, phi: T) -> C<T> {
        cis((phi - arg_tau(self.rotation)) / T::lit(2.0))
    }
}

/// Dome mesh on a `resolution × (odd)` grid in `(φ, s)`; the column at
/// `φ = 2π` is the first one reversed.
pub fn mesh_from_dome<T: Real>(
    dome: &DomeStrip<T>,
    resolution: usize,
) -> Result<StripMesh<T>, MeshError> {
    if !(dome.apex_height > T::zero()) {
        return Err(MeshError::ApexHeight(dome.apex_height.as_f64()));
    }
    if resolution < 8 || !resolution.is_multiple_of(2) {
        return Err(MeshError::Resolution(resolution));
    }
    let cols = resolution;
    let ns = (resolution / 4) * 2 + 1;
    let base = arg_tau(dome.rotation);
    let mut vertices = Vec::with_capacity(cols * ns);
    for a in 0..cols {
        let alpha = T::TAU() * T::from_usize_lossy(a) / T::from_usize_lossy(cols);
        let dir = cis(alpha / T::lit(2.0));
        for i in 0..ns {
            let s = -T::one() + T::lit(2.0) * T::from_usize_lossy(i) / T::from_usize_lossy(ns - 1);
            vertices.push(MeshVertex {
                midpoint: dir * s,
                phi: base + alpha,
                rho: dome.height(s),
            });
        }
    }
    let idx = |a: usize, i: usize| if a == cols { ns - 1 - i } else { a * ns + i };
    let mut triangles = Vec::with_capacity(2 * cols * (ns - 1));
    for a in 0..cols {
        for i in 0..ns - 1 {
            let (v00, v01, v10, v11) = (idx(a, i), idx(a, i + 1), idx(a + 1, i), idx(a + 1, i + 1));
            triangles.push([v00, v10, v11]);
            triangles.push([v00, v11, v01]);
        }
    }
    let boundary = (0..cols)
        .map(|a| idx(a, 0))
        .chain((0..cols).map(|a| idx(a, ns - 1)))
        .collect();
    StripMesh::new(vertices, triangles, boundary)
}

/// `(midpoint, arg Δ², |Δ|² − ε)` without the degenerate-chord check.
fn chord_vertex<T: Real>(p: C<T>, q: C<T>, eps: T) -> MeshVertex<T> {
    let d = p - q;
    MeshVertex {
        midpoint: (p + q) / T::lit(2.0),
        phi: arg_tau(d * d),
        rho: (d.norm_sqr() - eps).max(T::zero()),
    }
}

fn dist4<T: Real>(a: &[T; 4], b: &[T; 4]) -> T {
    (0..4)
        .map(|k| (a[k] - b[k]) * (a[k] - b[k]))
        .sum::<T>()
        .sqrt()
}

/// Closest points of two triangles in `ℝ⁴`, exact up to roundoff: the
/// minimum of a convex quadratic over a product of simplices is attained at
/// an interior critical point of some pair of faces, and all 7×7 face pairs
/// are solved.
pub fn triangle_distance4<T: Real>(a: &[[T; 4]; 3], b: &[[T; 4]; 3]) -> (T, [T; 4], [T; 4]) {
    const FACES: [&[usize]; 7] = [&[0], &[1], &[2], &[0, 1], &[1, 2], &[2, 0], &[0, 1, 2]];
    let mut best = (T::infinity(), a[0], b[0]);
    let slack = T::lit(-1e-12);
    for fa in FACES {
        for fb in FACES {
            let mut dirs = [[T::zero(); 4]; 4];
            let mut m = 0;
            for &k in &fa[1..] {
                dirs[m] = sub4(&a[k], &a[fa[0]]);
                m += 1;
            }
            for &k in &fb[1..] {
                dirs[m] = sub4(&b[fb[0]], &b[k]);
                m += 1;
            }
            // x − y = d + Σ c_k dirs_k with d = a0 − b0
            let d = sub4(&a[fa[0]], &b[fb[0]]);
            let mut g = [[T::zero(); 4]; 4];
            let mut rhs = [T::zero(); 4];
            for i in 0..m {
                for j in 0..m {
                    g[i][j] = dot4(&dirs[i], &dirs[j]);
                }
                rhs[i] = -dot4(&dirs[i], &d);
            }
            let Some(coef) = gram_solve(g, rhs, m, T::lit(1e-13)) else {
                continue;
            };
            let na = fa.len() - 1;
            let (ca, cb) = coef[..m].split_at(na);
            let ok = |c: &[T]| {
                c.iter().all(|&v| v >= slack)
                    && c.iter().fold(T::zero(), |s, &v| s + v) <= T::one() - slack
            };
            if !ok(ca) || !ok(cb) {
                continue;
            }
            let mut x = a[fa[0]];
            for (k, &c) in fa[1..].iter().zip(ca) {
                for q in 0..4 {
                    x[q] += c * (a[*k][q] - a[fa[0]][q]);
                }
            }
            let mut y = b[fb[0]];
            for (k, &c) in fb[1..].iter().zip(cb) {
                for q in 0..4 {
                    y[q] += c * (b[*k][q] - b[fb[0]][q]);
                }
            }
            let dist = dist4(&x, &y);
            if dist < best.0 {
                best = (dist, x, y);
            }
        }
    }
    best
}

/// Gaussian elimination on the leading `m × m` block of a Gram matrix;
/// `None` when a pivot falls below `rel_tol` times the largest diagonal entry.
fn gram_solve<T: Real>(mut g: [[T; 4]; 4], mut b: [T; 4], m: usize, rel_tol: T) -> Option<[T; 4]> {
    let scale = (0..m).map(|i| g[i][i].abs()).fold(T::zero(), T::max);
    for c in 0..m {
        let p = (c..m).max_by(|&i, &j| g[i][c].abs().partial_cmp(&g[j][c].abs()).unwrap())?;
        if !(g[p][c].abs() > rel_tol * scale) {
            return None;
        }
        g.swap(c, p);
        b.swap(c, p);
        for r in c + 1..m {
            let f = g[r][c] / g[c][c];
            for k in c..m {
                g[r][k] -= f * g[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = [T::zero(); 4];
    for c in (0..m).rev() {
        let s = (c + 1..m).fold(b[c], |s, k| s - g[c][k] * x[k]);
        x[c] = s / g[c][c];
    }
    Some(x)
}

fn sub4<T: Real>(a: &[T; 4], b: &[T; 4]) -> [T; 4] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

fn dot4<T: Real>(a: &[T; 4], b: &[T; 4]) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disjointness<T> {
    pub disjoint: bool,
    /// Minimum `ℝ⁴` distance between the meshes (0 when they meet).
    pub separation: T,
    /// Fiber of the nearest point on the first mesh.
    pub nearest_phi: T,
    pub pairs_tested: usize,
}

#[derive(Clone, Copy)]
struct Boxed<T> {
    lo: [T; 4],
    hi: [T; 4],
}

fn bbox<T: Real>(p: &[[T; 4]; 3]) -> Boxed<T> {
    let mut lo = p[0];
    let mut hi = p[0];
    for v in &p[1..] {
        for k in 0..4 {
            lo[k] = lo[k].min(v[k]);
            hi[k] = hi[k].max(v[k]);
        }
    }
    Boxed { lo, hi }
}

fn box_gap<T: Real>(a: &Boxed<T>, b: &Boxed<T>, dphi: T) -> T {
    let mut s = T::zero();
    for k in 0..4 {
        let off = if k == 2 { dphi } else { T::zero() };
        let g = (b.lo[k] + off - a.hi[k])
            .max(a.lo[k] - b.hi[k] - off)
            .max(T::zero());
        s += g * g;
    }
    s.sqrt()
}

/// Exact 4D separation of two meshes with the `phi` seam handled by testing
/// the second mesh at offsets `2πk`, `k ∈ {−1, 0, 1}`. Meshes with
/// separation `≤ tol` are reported as intersecting.
pub fn meshes_disjoint<T: Real>(a: &StripMesh<T>, b: &StripMesh<T>, tol: T) -> Disjointness<T> {
    let ta: Vec<[[T; 4]; 3]> = (0..a.triangles.len())
        .map(|t| a.triangle_points(t))
        .collect();
    let tb: Vec<[[T; 4]; 3]> = (0..b.triangles.len())
        .map(|t| b.triangle_points(t))
        .collect();
    let ba: Vec<Boxed<T>> = ta.iter().map(bbox).collect();
    let bb: Vec<Boxed<T>> = tb.iter().map(bbox).collect();
    let shifts = [-T::TAU(), T::zero(), T::TAU()];

    // Upper bound from vertex pairs.
    let va: Vec<(usize, [T; 4])> = ta
        .iter()
        .enumerate()
        .flat_map(|(t, p)| [(t, p[0])])
        .collect();
    let mut best = T::infinity();
    let mut nearest = T::zero();
    for (_, p) in &va {
        for q in tb.iter().map(|q| q[0]) {
            for &dphi in &shifts {
                let mut q = q;
                q[2] += dphi;
                let d = dist4(p, &q);
                if d < best {
                    best = d;
                    nearest = p[2];
                }
            }
        }
    }

    let mut cands: Vec<(T, usize, usize, usize)> = Vec::new();
    for (i, boxa) in ba.iter().enumerate() {
        for (j, boxb) in bb.iter().enumerate() {
            for (k, &dphi) in shifts.iter().enumerate() {
                let g = box_gap(boxa, boxb, dphi);
                if g <= best {
                    cands.push((g, i, j, k));
                }
            }
        }
    }
    cands.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let mut tested = 0;
    for (g, i, j, k) in cands {
        if g > best || best <= tol {
            break;
        }
        let mut q = tb[j];
        for v in q.iter_mut() {
            v[2] += shifts[k];
        }
        tested += 1;
        let (d, x, _) = triangle_distance4(&ta[i], &q);
        if d < best {
            best = d;
            nearest = x[2];
        }
    }
    Disjointness {
        disjoint: best > tol,
        separation: best,
        nearest_phi: wrap_tau(nearest),
        pairs_tested: tested,
    }
}

/// Default intersection tolerance for [`meshes_disjoint`].
pub fn default_tolerance<T: Real>() -> T {
    T::lit(1e-9)
}

/// A cross-section polyline in `(re m, im m, rho)`; `ends_on_boundary` marks
/// each end that lies on a boundary edge of the mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline<T> {
    pub points: Vec<[T; 3]>,
    pub closed: bool,
}

fn slice_mesh<T: Real>(mesh: &StripMesh<T>, phi: T) -> Vec<Polyline<T>> {
    type Key = (usize, usize);
    let mut point_at: HashMap<Key, [T; 3]> = HashMap::new();
    let mut links: HashMap<Key, Vec<Key>> = HashMap::new();
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let p = mesh.triangle_points(t);
        let lo = p.iter().map(|v| v[2]).fold(T::infinity(), T::min);
        let hi = p.iter().map(|v| v[2]).fold(T::neg_infinity(), T::max);
        for k in [-1i32, 0, 1, 2] {
            let target = phi + T::TAU() * T::lit(k as f64);
            if target < lo || target > hi {
                continue;
            }
            let above = p.map(|v| v[2] >= target);
            let mut hits = Vec::with_capacity(2);
            for (i, j) in [(0, 1), (1, 2), (2, 0)] {
                if above[i] != above[j] {
                    let s = (target - p[i][2]) / (p[j][2] - p[i][2]);
                    let lerp = |q: usize| p[i][q] + s * (p[j][q] - p[i][q]);
                    let key = (tri[i].min(tri[j]), tri[i].max(tri[j]));
                    point_at.entry(key).or_insert([lerp(0), lerp(1), lerp(3)]);
                    hits.push(key);
                }
            }
            if hits.len() == 2 {
                links.entry(hits[0]).or_default().push(hits[1]);
                links.entry(hits[1]).or_default().push(hits[0]);
            }
        }
    }
    let mut keys: Vec<Key> = links.keys().copied().collect();
    keys.sort_unstable();
    let mut used = std::collections::HashSet::new();
    let mut out = Vec::new();
    let walk = |start: Key, used: &mut std::collections::HashSet<Key>| {
        let mut chain = vec![start];
        used.insert(start);
        let mut cur = start;
        loop {
            let next = links[&cur].iter().copied().find(|k| !used.contains(k));
            match next {
                Some(n) => {
                    used.insert(n);
                    chain.push(n);
                    cur = n;
                }
                None => break,
            }
        }
        chain
    };
    for &k in keys.iter().filter(|k| links[k].len() == 1) {
        if used.contains(&k) {
            continue;
        }
        let chain = walk(k, &mut used);
        out.push(Polyline {
            points: chain.iter().map(|c| point_at[c]).collect(),
            closed: false,
        });
    }
    for &k in &keys {
        if used.contains(&k) {
            continue;
        }
        let chain = walk(k, &mut used);
        out.push(Polyline {
            points: chain.iter().map(|c| point_at[c]).collect(),
            closed: true,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::TorusLinkSpec;
    use std::f64::consts::PI;

    fn dome(h: f64, angle: f64) -> StripMesh<f64> {
        mesh_from_dome(&DomeStrip::new(h, cis(angle)).unwrap(), 32).unwrap()
    }

    #[test]
    fn circle_mesh_is_a_strip() {
        let c = JordanCurve::<f64>::unit_circle();
        let eps = (1e-3 * c.diameter()).powi(2);
        let m = mesh_from_curve(&c, eps, 64).unwrap();
        let chk = m.check();
        assert!(chk.is_strip(), "{chk:?}");
        assert!(TorusLinkSpec::new(2, 1).matches(&[chk.boundary_winding]));
        assert!(matches!(
            mesh_from_curve(&c, eps, 2),
            Err(MeshError::Resolution(2))
        ));
    }

    #[test]
    fn dome_mesh_is_a_strip() {
        let m = dome(1.0, 0.0);
        let chk = m.check();
        assert!(chk.is_strip(), "{chk:?}");
        assert!(TorusLinkSpec::new(2, 1).matches(&[chk.boundary_winding]));
        for &i in m.boundary() {
            let v = m.vertex(i);
            assert!((v.midpoint.norm() - 1.0).abs() < 1e-15);
            assert!((cis(v.phi) - v.midpoint * v.midpoint).norm() < 1e-12);
        }
        let two = dome(2.0, PI);
        assert!(
            TorusLinkSpec::new(4, 2).matches(&[chk.boundary_winding, two.check().boundary_winding])
        );
        assert!(matches!(
            DomeStrip::new(0.0, cis(0.0)),
            Err(MeshError::ApexHeight(_))
        ));
    }

    #[test]
    fn rotation_action() {
        let m = dome(1.0, 0.0);
        assert_eq!(rotate_strip(&m, cis(0.0)), m);
        let u = cis(0.7);
        let back = rotate_strip(&rotate_strip(&m, u.conj()), u);
        for i in 0..m.vertex_count() {
            assert_eq!(back.vertex(i), m.vertex(i));
        }
        let r = rotate_strip(&m, C::new(0.0, 1.0));
        let di = dome(1.0, PI / 2.0);
        for i in 0..m.vertex_count() {
            let (a, b) = (r.vertex(i), di.vertex(i));
            assert!(
                (a.midpoint - b.midpoint).norm() < 1e-14
                    && angle_diff(a.phi, b.phi).abs() < 1e-14
                    && a.rho == b.rho
            );
        }
    }

    #[test]
    fn triangle_distance_cases() {
        let t = |p: [[f64; 4]; 3]| p;
        let a = t([
            [0.0, 0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ]);
        // parallel copy lifted along rho
        let b = t([
            [0.0, 0.0, 0.0, 2.0],
            [1.0, 0.0, 0.0, 2.0],
            [0.0, 1.0, 0.0, 2.0],
        ]);
        assert!((triangle_distance4(&a, &b).0 - 2.0).abs() < 1e-12);
        // triangle in the complementary plane through an interior point: meets in one point
        let c = t([
            [0.25, 0.25, -1.0, -1.0],
            [0.25, 0.25, 1.0, -1.0],
            [0.25, 0.25, 0.0, 1.0],
        ]);
        assert!(triangle_distance4(&a, &c).0 < 1e-12);
        // same but shifted outside the first triangle
        let d = t([
            [1.0, 1.0, -1.0, -1.0],
            [1.0, 1.0, 1.0, -1.0],
            [1.0, 1.0, 0.0, 1.0],
        ]);
        assert!((triangle_distance4(&a, &d).0 - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn dome_disjointness_examples() {
        let (a, b, c) = (dome(1.0, 0.0), dome(2.0, PI), dome(1.0, PI / 2.0));
        let tol = default_tolerance();
        let ab = meshes_disjoint(&a, &b, tol);
        assert!(ab.disjoint && ab.separation > 0.1, "{ab:?}");
        assert!(!meshes_disjoint(&a, &c, tol).disjoint);
        assert!(!meshes_disjoint(&a, &a, tol).disjoint);
    }

    #[test]
    fn dome_slice_is_the_parabola() {
        let m = dome(1.0, 0.0);
        let lines = m.slice(0.3);
        assert_eq!(lines.len(), 1);
        let l = &lines[0];
        assert!(!l.closed);
        let dir = cis(0.15);
        for p in &l.points {
            let z = C::new(p[0], p[1]);
            let s = (z * dir.conj()).re;
            assert!((z - dir * s).norm() < 0.02);
            assert!((p[2] - (1.0 - s * s)).abs() < 0.02);
        }
        let (e0, e1) = (l.points[0], l.points[l.points.len() - 1]);
        assert!(e0[2].abs() < 1e-12 && e1[2].abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let m = dome(1.5, 1.0);
        let back = StripMesh::<f64>::from_json(&m.to_json()).unwrap();
        for i in 0..m.vertex_count() {
            let (a, b) = (m.vertex(i), back.vertex(i));
            assert!((a.midpoint - b.midpoint).norm() < 1e-15 && (a.phi - b.phi).abs() < 1e-15);
        }
        assert_eq!(back.triangles(), m.triangles());
        assert!(StripMesh::<f64>::from_json(
            r#"{"vertices":[],"triangles":[[0,1,2]],"boundary":[]}"#
        )
        .is_err());
    }
}
