//! The `≺` relation between disjoint strips, computed fiberwise from the mod-2
//! count of crossings between one cross-section and a cone spanning the other.
//!
//! At fiber `φ` each strip has a section `L` with both ends on `rho = 0`; `P`
//! is the straight segment joining those ends. The cone from an apex above
//! both sections over the closed loop `L ∪ P` is a singular spanning chain,
//! and `a ≺ b` iff `L_b` crosses the cone of `a` an even number of times.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{wrap_tau, Real};
use crate::strip_mesh::{default_tolerance, meshes_disjoint, StripMesh};

pub type P3<T> = [T; 3];

#[derive(Debug, Clone, PartialEq, Error, Serialize, Deserialize)]
pub enum OrderError {
    #[error("fiber φ = {phi} is not regular: {sections} sections, expected one arc with two ends")]
    NonRegularFiber { phi: f64, sections: usize },
    #[error("target passes within tolerance of a cone edge or vertex")]
    DegeneratePosition,
    #[error("strips {0} and {1} intersect")]
    DisjointnessViolated(usize, usize),
    #[error("sections meet at fiber φ = {0}")]
    SectionsMeet(f64),
    #[error("need at least {need} strips, got {got}")]
    TooFewStrips { need: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderConfig {
    /// RNG seed for apex placement.
    pub seed: u64,
    /// Apex redraws after a degenerate position.
    pub apex_attempts: usize,
    /// Minimum distance between two sections at a fiber.
    pub section_tol: f64,
    /// Fiber nudge after a non-regular fiber.
    pub guard: f64,
    pub resample_attempts: usize,
}

impl Default for OrderConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            apex_attempts: 32,
            section_tol: 1e-9,
            guard: 1e-3,
            resample_attempts: 3,
        }
    }
}

fn sub<T: Real>(a: &P3<T>, b: &P3<T>) -> P3<T> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot<T: Real>(a: &P3<T>, b: &P3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross<T: Real>(a: &P3<T>, b: &P3<T>) -> P3<T> {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// `det[b − a, c − a, d − a]`.
pub fn orient3d<T: Real>(a: &P3<T>, b: &P3<T>, c: &P3<T>, d: &P3<T>) -> T {
    dot(&cross(&sub(b, a), &sub(c, a)), &sub(d, a))
}

fn sign<T: Real>(x: T, tol: T) -> i8 {
    if x > tol {
        1
    } else if x < -tol {
        -1
    } else {
        0
    }
}

/// Transversal crossing of segment `pq` with triangle `abc`.
fn segment_crosses<T: Real>(
    p: &P3<T>,
    q: &P3<T>,
    tri: [&P3<T>; 3],
    tol: T,
) -> Result<bool, OrderError> {
    let [a, b, c] = tri;
    let (s1, s2) = (
        sign(orient3d(a, b, c, p), tol),
        sign(orient3d(a, b, c, q), tol),
    );
    if s1 * s2 == 1 {
        return Ok(false);
    }
    let t = [
        sign(orient3d(p, q, a, b), tol),
        sign(orient3d(p, q, b, c), tol),
        sign(orient3d(p, q, c, a), tol),
    ];
    if t.contains(&1) && t.contains(&-1) {
        return Ok(false);
    }
    if s1 == 0 || s2 == 0 || t.contains(&0) {
        return Err(OrderError::DegeneratePosition);
    }
    Ok(true)
}

/// Parity of crossings between `target` and the cone from `apex` over the
/// closed loop through `section` (the last point joins the first by `P`).
pub fn cone_parity<T: Real>(
    section: &[P3<T>],
    target: &[P3<T>],
    apex: &P3<T>,
) -> Result<bool, OrderError> {
    let scale = section
        .iter()
        .chain(target)
        .chain(std::iter::once(apex))
        .flat_map(|p| p.iter())
        .fold(T::zero(), |m, v| m.max(v.abs()))
        .max(T::one());
    let tol = T::lit(1e-12) * scale * scale * scale;
    let n = section.len();
    let mut count = 0usize;
    for k in 0..n {
        let (c0, c1) = (&section[k], &section[(k + 1) % n]);
        for seg in target.windows(2) {
            if segment_crosses(&seg[0], &seg[1], [apex, c0, c1], tol)? {
                count += 1;
            }
        }
    }
    Ok(count % 2 == 1)
}

/// One regular section of a strip at a fiber.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section<T> {
    pub phi: T,
    /// `L`, from one boundary end to the other.
    pub points: Vec<P3<T>>,
}

impl<T: Real> Section<T> {
    pub fn ends(&self) -> (P3<T>, P3<T>) {
        (self.points[0], self.points[self.points.len() - 1])
    }

    fn top(&self) -> T {
        self.points.iter().map(|p| p[2]).fold(T::zero(), T::max)
    }
}

pub fn section_at<T: Real>(mesh: &StripMesh<T>, phi: T) -> Result<Section<T>, OrderError> {
    let lines = mesh.slice(phi);
    if lines.len() != 1 || lines[0].closed || lines[0].points.len() < 2 {
        return Err(OrderError::NonRegularFiber {
            phi: phi.as_f64(),
            sections: lines.len(),
        });
    }
    Ok(Section {
        phi: wrap_tau(phi),
        points: lines.into_iter().next().unwrap().points,
    })
}

fn seg_seg_distance<T: Real>(p0: &P3<T>, p1: &P3<T>, q0: &P3<T>, q1: &P3<T>) -> T {
    let d1 = sub(p1, p0);
    let d2 = sub(q1, q0);
    let r = sub(p0, q0);
    let (a, e, f) = (dot(&d1, &d1), dot(&d2, &d2), dot(&d2, &r));
    let c = dot(&d1, &r);
    let b = dot(&d1, &d2);
    let clamp = |x: T| x.max(T::zero()).min(T::one());
    let denom = a * e - b * b;
    let mut s = if denom > T::epsilon() * a * e && denom > T::zero() {
        clamp((b * f - c * e) / denom)
    } else {
        T::zero()
    };
    let mut t = if e > T::zero() {
        (b * s + f) / e
    } else {
        T::zero()
    };
    if t < T::zero() {
        t = T::zero();
        s = if a > T::zero() {
            clamp(-c / a)
        } else {
            T::zero()
        };
    } else if t > T::one() {
        t = T::one();
        s = if a > T::zero() {
            clamp((b - c) / a)
        } else {
            T::zero()
        };
    }
    let x = [p0[0] + d1[0] * s, p0[1] + d1[1] * s, p0[2] + d1[2] * s];
    let y = [q0[0] + d2[0] * t, q0[1] + d2[1] * t, q0[2] + d2[2] * t];
    let d = sub(&x, &y);
    dot(&d, &d).sqrt()
}

/// Minimum distance between two sections.
pub fn section_distance<T: Real>(a: &Section<T>, b: &Section<T>) -> T {
    let mut best = T::infinity();
    for s in a.points.windows(2) {
        for t in b.points.windows(2) {
            best = best.min(seg_seg_distance(&s[0], &s[1], &t[0], &t[1]));
        }
    }
    best
}

fn random_apex<T: Real>(rng: &mut ChaCha8Rng, a: &Section<T>, b: &Section<T>) -> P3<T> {
    let pts = a.points.iter().chain(&b.points);
    let (mut lo, mut hi) = ([T::infinity(); 2], [T::neg_infinity(); 2]);
    for p in pts {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let top = a.top().max(b.top()).max(T::lit(1e-6));
    let mut coord = |k: usize| {
        let span = (hi[k] - lo[k]).max(T::lit(1e-6));
        lo[k] - span * T::lit(0.25) + span * T::lit(1.5) * T::lit(rng.gen::<f64>())
    };
    let x = coord(0);
    let y = coord(1);
    [x, y, top * T::lit(1.5 + rng.gen::<f64>())]
}

/// Parity of `L_target` against the cone over `L_source ∪ P_source`, redrawing
/// the apex on degenerate positions. Returns the parity and the apex used.
pub fn section_parity<T: Real>(
    source: &Section<T>,
    target: &Section<T>,
    rng: &mut ChaCha8Rng,
    attempts: usize,
) -> Result<(bool, P3<T>), OrderError> {
    for _ in 0..attempts.max(1) {
        let apex = random_apex(rng, source, target);
        match cone_parity(&source.points, &target.points, &apex) {
            Ok(p) => return Ok((p, apex)),
            Err(OrderError::DegeneratePosition) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(OrderError::DegeneratePosition)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Precedence<T> {
    pub precedes: bool,
    pub phi: T,
    pub parity: bool,
    pub apex: P3<T>,
    /// Seed that replays the apex draw.
    pub seed: u64,
}

/// `a ≺ b` at fiber `phi`. Only the sections are checked for disjointness;
/// run [`meshes_disjoint`] for the global precondition.
pub fn precedes<T: Real>(
    a: &StripMesh<T>,
    b: &StripMesh<T>,
    phi: T,
    cfg: &OrderConfig,
) -> Result<Precedence<T>, OrderError> {
    let (sa, sb) = regular_sections(a, b, phi, cfg)?;
    precedes_sections(&sa, &sb, cfg)
}

fn precedes_sections<T: Real>(
    sa: &Section<T>,
    sb: &Section<T>,
    cfg: &OrderConfig,
) -> Result<Precedence<T>, OrderError> {
    if section_distance(sa, sb) <= T::lit(cfg.section_tol) {
        return Err(OrderError::SectionsMeet(sa.phi.as_f64()));
    }
    let seed = cfg.seed ^ sa.phi.as_f64().to_bits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (parity, apex) = section_parity(sa, sb, &mut rng, cfg.apex_attempts)?;
    Ok(Precedence {
        precedes: !parity,
        phi: sa.phi,
        parity,
        apex,
        seed,
    })
}

/// Sections of both strips at `phi`, nudged by the guard band on
/// non-regular fibers.
fn regular_sections<T: Real>(
    a: &StripMesh<T>,
    b: &StripMesh<T>,
    phi: T,
    cfg: &OrderConfig,
) -> Result<(Section<T>, Section<T>), OrderError> {
    let mut last = None;
    for k in 0..=cfg.resample_attempts {
        let p = phi + T::lit(cfg.guard * k as f64);
        match (section_at(a, p), section_at(b, p)) {
            (Ok(x), Ok(y)) => return Ok((x, y)),
            (Err(e), _) | (_, Err(e)) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberRecord<T> {
    pub phi: T,
    pub parity_ab: bool,
    pub parity_ba: bool,
    pub seed: u64,
    pub interleaved: bool,
    /// `|P_a ∩ P_b|` in the `rho = 0` plane.
    pub p_crossings: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntisymmetryReport<T> {
    pub fibers: Vec<FiberRecord<T>>,
    pub skipped: Vec<(T, String)>,
    /// Fibers where both parities agree.
    pub failures: Vec<T>,
    /// Interleaved fibers with an even `P` crossing count.
    pub p_failures: Vec<T>,
    pub pass: bool,
}

fn segments_cross_2d<T: Real>(a0: &P3<T>, a1: &P3<T>, b0: &P3<T>, b1: &P3<T>) -> bool {
    let o = |p: &P3<T>, q: &P3<T>, r: &P3<T>| {
        (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    };
    let (d1, d2) = (o(a0, a1, b0), o(a0, a1, b1));
    let (d3, d4) = (o(b0, b1, a0), o(b0, b1, a1));
    d1 * d2 < T::zero() && d3 * d4 < T::zero()
}

/// Whether the boundary ends of two sections alternate around their centroid.
fn interleaved<T: Real>(a: &Section<T>, b: &Section<T>) -> bool {
    let (a0, a1) = a.ends();
    let (b0, b1) = b.ends();
    let pts = [(a0, 0), (a1, 0), (b0, 1), (b1, 1)];
    let four = T::lit(4.0);
    let cx = pts.iter().fold(T::zero(), |s, p| s + p.0[0]) / four;
    let cy = pts.iter().fold(T::zero(), |s, p| s + p.0[1]) / four;
    let mut by_angle: Vec<(T, i32)> = pts
        .iter()
        .map(|(p, l)| ((p[1] - cy).atan2(p[0] - cx), *l))
        .collect();
    by_angle.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    (0..4).all(|i| by_angle[i].1 != by_angle[(i + 1) % 4].1)
}

/// Both parities at every fiber, independently; exactly one must be even.
pub fn antisymmetry_suite<T: Real>(
    a: &StripMesh<T>,
    b: &StripMesh<T>,
    fibers: &[T],
    cfg: &OrderConfig,
) -> Result<AntisymmetryReport<T>, OrderError> {
    if !meshes_disjoint(a, b, default_tolerance()).disjoint {
        return Err(OrderError::DisjointnessViolated(0, 1));
    }
    let mut report = AntisymmetryReport {
        fibers: Vec::new(),
        skipped: Vec::new(),
        failures: Vec::new(),
        p_failures: Vec::new(),
        pass: true,
    };
    for &phi in fibers {
        let (sa, sb) = match regular_sections(a, b, phi, cfg) {
            Ok(s) => s,
            Err(e) => {
                report.skipped.push((phi, e.to_string()));
                continue;
            }
        };
        let ab = precedes_sections(&sa, &sb, cfg);
        let ba = precedes_sections(
            &sb,
            &sa,
            &OrderConfig {
                seed: cfg.seed.wrapping_add(1),
                ..*cfg
            },
        );
        let (ab, ba) = match (ab, ba) {
            (Ok(x), Ok(y)) => (x, y),
            (Err(e), _) | (_, Err(e)) => {
                report.skipped.push((phi, e.to_string()));
                continue;
            }
        };
        let inter = interleaved(&sa, &sb);
        let (a0, a1) = sa.ends();
        let (b0, b1) = sb.ends();
        let p_crossings = usize::from(segments_cross_2d(&a0, &a1, &b0, &b1));
        if ab.parity == ba.parity {
            report.failures.push(sa.phi);
        }
        if inter && p_crossings % 2 == 0 {
            report.p_failures.push(sa.phi);
        }
        report.fibers.push(FiberRecord {
            phi: sa.phi,
            parity_ab: ab.parity,
            parity_ba: ba.parity,
            seed: ab.seed,
            interleaved: inter,
            p_crossings,
        });
    }
    report.pass =
        report.failures.is_empty() && report.p_failures.is_empty() && !report.fibers.is_empty();
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleReport<T> {
    pub phi: T,
    /// `relation[i][j]` is `i ≺ j`.
    pub relation: Vec<Vec<bool>>,
    pub antisymmetric: bool,
    pub total: bool,
    pub transitive: bool,
    pub cycles: Vec<[usize; 3]>,
    /// Indices from least to greatest when the relation is a strict total order.
    pub order: Option<Vec<usize>>,
    pub pass: bool,
}

/// Full relation matrix on pairwise-disjoint strips at one common regular fiber.
pub fn cycle_suite<T: Real>(
    strips: &[StripMesh<T>],
    phi: T,
    cfg: &OrderConfig,
) -> Result<CycleReport<T>, OrderError> {
    let n = strips.len();
    if n < 3 {
        return Err(OrderError::TooFewStrips { need: 3, got: n });
    }
    for i in 0..n {
        for j in i + 1..n {
            if !meshes_disjoint(&strips[i], &strips[j], default_tolerance()).disjoint {
                return Err(OrderError::DisjointnessViolated(i, j));
            }
        }
    }
    let mut fiber = phi;
    let mut sections = None;
    for k in 0..=cfg.resample_attempts {
        let p = phi + T::lit(cfg.guard * k as f64);
        if let Ok(s) = strips
            .iter()
            .map(|m| section_at(m, p))
            .collect::<Result<Vec<_>, _>>()
        {
            fiber = p;
            sections = Some(s);
            break;
        }
    }
    let sections = match sections {
        Some(s) => s,
        None => {
            return Err(OrderError::NonRegularFiber {
                phi: fiber.as_f64(),
                sections: 0,
            })
        }
    };
    let mut relation = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let c = OrderConfig {
                    seed: cfg.seed.wrapping_add((i * n + j) as u64),
                    ..*cfg
                };
                relation[i][j] = precedes_sections(&sections[i], &sections[j], &c)?.precedes;
            }
        }
    }
    let antisymmetric =
        (0..n).all(|i| (0..n).all(|j| i == j || !(relation[i][j] && relation[j][i])));
    let total = (0..n).all(|i| (0..n).all(|j| i == j || relation[i][j] || relation[j][i]));
    let mut cycles = Vec::new();
    let mut transitive = true;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                if relation[i][j] && relation[j][k] && !relation[i][k] {
                    transitive = false;
                    if relation[k][i] && i < j && i < k {
                        cycles.push([i, j, k]);
                    }
                }
            }
        }
    }
    let pass = antisymmetric && total && transitive;
    let order = pass.then(|| {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by_key(|&i| (0..n).filter(|&j| relation[j][i]).count());
        idx
    });
    Ok(CycleReport {
        phi: fiber,
        relation,
        antisymmetric,
        total,
        transitive,
        cycles,
        order,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum JumpScan<T> {
    /// Sections met at a scanned fiber, so parities are undefined there.
    Skipped { phi: T, reason: String },
    Done {
        parities: Vec<(T, bool)>,
        /// Consecutive scanned fibers `(φ_i, φ_{i+1})` across which the parity flips.
        jumps: Vec<(T, T)>,
        /// Fibers dropped as non-regular.
        irregular: Vec<T>,
    },
}

/// Per-fiber parity of `L_b` against the cone over `a` along a fiber grid
/// (cyclic), and the brackets where it flips.
pub fn parity_jump_scan<T: Real>(
    a: &StripMesh<T>,
    b: &StripMesh<T>,
    fibers: &[T],
    cfg: &OrderConfig,
) -> JumpScan<T> {
    let mut parities = Vec::new();
    let mut irregular = Vec::new();
    for &phi in fibers {
        let (sa, sb) = match (section_at(a, phi), section_at(b, phi)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => {
                irregular.push(phi);
                continue;
            }
        };
        match precedes_sections(&sa, &sb, cfg) {
            Ok(p) => parities.push((phi, p.parity)),
            Err(OrderError::SectionsMeet(_)) => {
                return JumpScan::Skipped {
                    phi,
                    reason: "sections meet".into(),
                };
            }
            Err(_) => irregular.push(phi),
        }
    }
    let n = parities.len();
    let jumps = if n < 2 {
        Vec::new()
    } else {
        (0..n)
            .filter(|&i| parities[i].1 != parities[(i + 1) % n].1)
            .map(|i| (parities[i].0, parities[(i + 1) % n].0))
            .collect()
    };
    JumpScan::Done {
        parities,
        jumps,
        irregular,
    }
}

/// Whether `phi` lies in the cyclic bracket `(lo, hi)` widened by `slack`.
pub fn bracket_contains<T: Real>(lo: T, hi: T, phi: T, slack: T) -> bool {
    let width = wrap_tau(hi - lo);
    let off = wrap_tau(phi - lo + slack);
    off <= width + slack + slack
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cis;
    use crate::strip_mesh::{mesh_from_dome, DomeStrip};
    use std::f64::consts::PI;

    fn dome(h: f64, angle: f64) -> StripMesh<f64> {
        mesh_from_dome(&DomeStrip::new(h, cis(angle)).unwrap(), 32).unwrap()
    }

    #[test]
    fn far_target_has_even_parity() {
        let sq = [
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [1.0, 0.0, 1.0],
            [0.0, 0.0, 1.0],
        ];
        let far = [[10.0, 10.0, 0.0], [11.0, 10.0, 0.0]];
        assert_eq!(cone_parity(&sq, &far, &[0.3, 0.2, 5.0]), Ok(false));
        // a segment through the loop's plane inside it crosses the cone once
        let through = [[0.5, -1.0, 0.5], [0.5, 1.0, 0.5]];
        assert_eq!(cone_parity(&sq, &through, &[0.3, 0.2, 5.0]), Ok(true));
    }

    #[test]
    fn degenerate_apex_is_reported() {
        let sq = [
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [1.0, 0.0, 1.0],
            [0.0, 0.0, 1.0],
        ];
        // the target meets the fan edge from the apex to the corner (0, 0, 0)
        let apex = [0.5, 0.25, 5.0];
        let hit = [0.05, 0.025, 0.5];
        let across = [
            [hit[0], hit[1] - 1.0, hit[2]],
            [hit[0], hit[1] + 1.0, hit[2]],
        ];
        assert_eq!(
            cone_parity(&sq, &across, &apex),
            Err(OrderError::DegeneratePosition)
        );
    }

    #[test]
    fn low_dome_precedes_tall() {
        let (low, tall) = (dome(1.0, 0.0), dome(2.0, PI));
        let cfg = OrderConfig::default();
        let ab = precedes(&low, &tall, 0.4, &cfg).unwrap();
        let ba = precedes(&tall, &low, 0.4, &cfg).unwrap();
        assert!(ab.precedes && !ab.parity);
        assert!(!ba.precedes && ba.parity);
    }

    #[test]
    fn meeting_sections_are_rejected() {
        let (a, c) = (dome(1.0, 0.0), dome(1.0, PI / 2.0));
        assert!(matches!(
            precedes(&a, &c, 0.4, &OrderConfig::default()),
            Err(OrderError::SectionsMeet(_))
        ));
        assert!(matches!(
            parity_jump_scan(&a, &c, &[0.1, 0.2], &OrderConfig::default()),
            JumpScan::Skipped { .. }
        ));
        assert_eq!(
            antisymmetry_suite(&a, &c, &[0.1], &OrderConfig::default()),
            Err(OrderError::DisjointnessViolated(0, 1))
        );
    }

    #[test]
    fn height_ordered_triple() {
        let strips = [
            dome(2.0, 2.0 * PI / 3.0),
            dome(1.0, 0.0),
            dome(3.0, 4.0 * PI / 3.0),
        ];
        let r = cycle_suite(&strips, 0.7, &OrderConfig::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.order, Some(vec![1, 0, 2]));
        assert!(matches!(
            cycle_suite(&strips[..2], 0.7, &OrderConfig::default()),
            Err(OrderError::TooFewStrips { .. })
        ));
    }

    #[test]
    fn disjoint_pair_has_no_jumps() {
        let (low, tall) = (dome(1.0, 0.0), dome(2.0, PI));
        let fibers: Vec<f64> = (0..24).map(|i| 0.05 + 2.0 * PI * i as f64 / 24.0).collect();
        match parity_jump_scan(&low, &tall, &fibers, &OrderConfig::default()) {
            JumpScan::Done {
                parities, jumps, ..
            } => {
                assert_eq!(parities.len(), 24);
                assert!(jumps.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn brackets_wrap() {
        assert!(bracket_contains(6.0, 0.2, 0.1, 0.0));
        assert!(bracket_contains(1.0, 1.5, 1.2, 0.0));
        assert!(!bracket_contains(1.0, 1.5, 2.0, 0.1));
    }
}
