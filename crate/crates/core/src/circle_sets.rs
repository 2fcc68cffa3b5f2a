//! Finite unions of arcs on `S¹ = ℝ/ℤ` (full turn = 1) with exact endpoint
//! arithmetic, Minkowski products and the Kemperman and triple-product checks.
//!
//! Each arc carries open/closed flags for both endpoints so that sets such as
//! the open arc `(0, 1/3)` keep their boundary behaviour under products.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::Neg;

use num_rational::Rational64;
use num_traits::{Num, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Endpoint arithmetic for [`ArcSet`]. Rationals compare exactly; floats
/// snap endpoints closer than [`ArcScalar::tol`].
pub trait ArcScalar:
    Num + Signed + Clone + PartialOrd + Neg<Output = Self> + Debug + Send + Sync + 'static
{
    fn tol() -> Self;
    fn floor_val(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn from_f64(x: f64) -> Self;
}

impl ArcScalar for f64 {
    fn tol() -> Self {
        1e-12
    }
    fn floor_val(&self) -> Self {
        self.floor()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_f64(x: f64) -> Self {
        x
    }
}

impl ArcScalar for f32 {
    fn tol() -> Self {
        1e-6
    }
    fn floor_val(&self) -> Self {
        self.floor()
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn from_f64(x: f64) -> Self {
        x as f32
    }
}

impl ArcScalar for Rational64 {
    fn tol() -> Self {
        Rational64::from_integer(0)
    }
    fn floor_val(&self) -> Self {
        self.floor()
    }
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
    /// Nearest fraction with denominator up to about `10⁹`.
    fn from_f64(x: f64) -> Self {
        Rational64::approximate_float(x)
            .unwrap_or_else(|| Rational64::from_integer(x.round() as i64))
    }
}

fn eq<S: ArcScalar>(a: &S, b: &S) -> bool {
    (a.clone() - b.clone()).abs() <= S::tol()
}

fn lt<S: ArcScalar>(a: &S, b: &S) -> bool {
    a.clone() < b.clone() - S::tol()
}

fn half<S: ArcScalar>() -> S {
    S::one() / (S::one() + S::one())
}

/// `x mod 1` in `[0, 1)`.
pub fn frac<S: ArcScalar>(x: S) -> S {
    let r = x.clone() - x.floor_val();
    if eq(&r, &S::one()) || r >= S::one() || eq(&r, &S::zero()) {
        S::zero()
    } else {
        r
    }
}

/// The arc from `start` of length `len ∈ [0, 1]`, with endpoint flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Arc<S> {
    pub start: S,
    pub len: S,
    pub start_closed: bool,
    pub end_closed: bool,
}

impl<S: ArcScalar> Arc<S> {
    fn make(a: S, b: S, start_closed: bool, end_closed: bool) -> Self {
        Self {
            len: b - a.clone(),
            start: a,
            start_closed,
            end_closed,
        }
    }

    /// `[a, b)`.
    pub fn half_open(a: S, b: S) -> Self {
        Self::make(a, b, true, false)
    }

    pub fn open(a: S, b: S) -> Self {
        Self::make(a, b, false, false)
    }

    pub fn closed(a: S, b: S) -> Self {
        Self::make(a, b, true, true)
    }

    pub fn end(&self) -> S {
        self.start.clone() + self.len.clone()
    }

    pub fn contains(&self, p: &S) -> bool {
        let d = frac(p.clone() - self.start.clone());
        if eq(&self.len, &S::one()) {
            return !eq(&d, &S::zero()) || self.start_closed || self.end_closed;
        }
        if eq(&d, &S::zero()) {
            return self.start_closed || (eq(&self.len, &S::zero()) && self.end_closed);
        }
        if eq(&d, &self.len) {
            return self.end_closed;
        }
        d < self.len
    }

    /// The point `start + λ·len`.
    fn at(&self, lambda: &S) -> S {
        frac(self.start.clone() + lambda.clone() * self.len.clone())
    }
}

/// Linear piece of `[0, 1)` used during normalization.
#[derive(Debug, Clone)]
struct Piece<S> {
    lo: S,
    hi: S,
    lc: bool,
    hc: bool,
}

impl<S: ArcScalar> Piece<S> {
    fn is_empty(&self) -> bool {
        if eq(&self.lo, &self.hi) {
            !(self.lc && self.hc)
        } else {
            self.hi < self.lo
        }
    }
}

fn to_pieces<S: ArcScalar>(arc: &Arc<S>, out: &mut Vec<Piece<S>>) {
    let one = S::one();
    let zero = S::zero();
    if lt(&arc.len, &zero) {
        return;
    }
    let s = frac(arc.start.clone());
    if !lt(&arc.len, &one) {
        if arc.len > one.clone() + S::tol() || arc.start_closed || arc.end_closed {
            out.push(Piece {
                lo: zero,
                hi: one,
                lc: true,
                hc: false,
            });
        } else {
            out.push(Piece {
                lo: zero,
                hi: s.clone(),
                lc: true,
                hc: false,
            });
            out.push(Piece {
                lo: s,
                hi: one,
                lc: false,
                hc: false,
            });
        }
        return;
    }
    let e = s.clone() + arc.len.clone();
    if lt(&e, &one) {
        out.push(Piece {
            lo: s,
            hi: e,
            lc: arc.start_closed,
            hc: arc.end_closed,
        });
    } else if eq(&e, &one) {
        out.push(Piece {
            lo: s,
            hi: one,
            lc: arc.start_closed,
            hc: false,
        });
        if arc.end_closed {
            out.push(Piece {
                lo: zero.clone(),
                hi: zero,
                lc: true,
                hc: true,
            });
        }
    } else {
        out.push(Piece {
            lo: s,
            hi: one.clone(),
            lc: arc.start_closed,
            hc: false,
        });
        out.push(Piece {
            lo: zero,
            hi: e - one,
            lc: true,
            hc: arc.end_closed,
        });
    }
}

/// Sorted, disjoint, non-touching pieces covering the same points.
fn merge<S: ArcScalar>(mut pieces: Vec<Piece<S>>) -> Vec<Piece<S>> {
    pieces.retain(|p| !p.is_empty());
    pieces.sort_by(|a, b| {
        a.lo.partial_cmp(&b.lo)
            .unwrap_or(Ordering::Equal)
            .then(b.lc.cmp(&a.lc))
    });
    let snap = S::tol() > S::zero();
    let mut out: Vec<Piece<S>> = Vec::new();
    for p in pieces {
        if let Some(cur) = out.last_mut() {
            let joins = if eq(&cur.hi, &p.lo) {
                snap || cur.hc || p.lc
            } else {
                p.lo < cur.hi
            };
            if joins {
                if eq(&cur.lo, &p.lo) {
                    cur.lc |= p.lc;
                }
                if eq(&p.hi, &cur.hi) {
                    cur.hc |= p.hc;
                } else if p.hi > cur.hi {
                    cur.hi = p.hi;
                    cur.hc = p.hc;
                }
                continue;
            }
        }
        out.push(p);
    }
    out
}

fn complement_pieces<S: ArcScalar>(pieces: &[Piece<S>]) -> Vec<Piece<S>> {
    let mut out = Vec::new();
    let (mut cursor, mut cc) = (S::zero(), true);
    for p in pieces {
        out.push(Piece {
            lo: cursor,
            hi: p.lo.clone(),
            lc: cc,
            hc: !p.lc,
        });
        cursor = p.hi.clone();
        cc = !p.hc;
    }
    if lt(&cursor, &S::one()) {
        out.push(Piece {
            lo: cursor,
            hi: S::one(),
            lc: cc,
            hc: false,
        });
    }
    out.retain(|p| !p.is_empty());
    out
}

fn from_pieces<S: ArcScalar>(mut pieces: Vec<Piece<S>>) -> Vec<Arc<S>> {
    let one = S::one();
    let zero = S::zero();
    if pieces.len() == 1 && eq(&pieces[0].lo, &zero) && eq(&pieces[0].hi, &one) && pieces[0].lc {
        return vec![Arc::half_open(zero, one)];
    }
    let glue = pieces.len() >= 2
        && eq(&pieces[pieces.len() - 1].hi, &one)
        && eq(&pieces[0].lo, &zero)
        && pieces[0].lc;
    let mut wrap = None;
    if glue {
        let first = pieces.remove(0);
        let last = pieces.pop().expect("two pieces");
        wrap = Some(Arc {
            len: one.clone() - last.lo.clone() + first.hi,
            start: last.lo,
            start_closed: last.lc,
            end_closed: first.hc,
        });
    }
    let mut arcs: Vec<Arc<S>> = pieces
        .into_iter()
        .map(|p| Arc {
            len: p.hi - p.lo.clone(),
            start: p.lo,
            start_closed: p.lc,
            end_closed: p.hc,
        })
        .collect();
    arcs.extend(wrap);
    arcs
}

/// A finite union of arcs on the circle, kept normalized: sorted by start,
/// pairwise disjoint and separated by gaps, at most one arc through `0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcSet<S> {
    arcs: Vec<Arc<S>>,
}

impl<S: ArcScalar> ArcSet<S> {
    pub fn empty() -> Self {
        Self { arcs: Vec::new() }
    }

    pub fn full() -> Self {
        Self {
            arcs: vec![Arc::half_open(S::zero(), S::one())],
        }
    }

    pub fn new(arcs: impl IntoIterator<Item = Arc<S>>) -> Self {
        let mut pieces = Vec::new();
        for a in arcs {
            to_pieces(&a, &mut pieces);
        }
        Self::from_merged(merge(pieces))
    }

    /// Union of half-open arcs `[a, b)`; `b` may exceed 1 for a wrapping arc.
    pub fn from_intervals(intervals: &[(S, S)]) -> Self {
        Self::new(
            intervals
                .iter()
                .map(|(a, b)| Arc::half_open(a.clone(), b.clone())),
        )
    }

    fn from_merged(pieces: Vec<Piece<S>>) -> Self {
        Self {
            arcs: from_pieces(pieces),
        }
    }

    fn pieces(&self) -> Vec<Piece<S>> {
        let mut pieces = Vec::new();
        for a in &self.arcs {
            to_pieces(a, &mut pieces);
        }
        merge(pieces)
    }

    pub fn arcs(&self) -> &[Arc<S>] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.arcs.len() == 1 && {
            let a = &self.arcs[0];
            eq(&a.len, &S::one()) && (a.start_closed || a.end_closed)
        }
    }

    /// Haar measure (total length).
    pub fn measure(&self) -> S {
        self.arcs.iter().fold(S::zero(), |m, a| m + a.len.clone())
    }

    pub fn contains(&self, p: &S) -> bool {
        self.arcs.iter().any(|a| a.contains(p))
    }

    /// `A⁻¹ = {−a}`.
    pub fn inverse(&self) -> Self {
        Self::new(self.arcs.iter().map(|a| Arc {
            start: frac(-a.end()),
            len: a.len.clone(),
            start_closed: a.end_closed,
            end_closed: a.start_closed,
        }))
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut pieces = self.pieces();
        pieces.extend(other.pieces());
        Self::from_merged(merge(pieces))
    }

    pub fn complement(&self) -> Self {
        Self::from_merged(merge(complement_pieces(&self.pieces())))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.difference(other).union(&other.difference(self))
    }

    /// Minkowski product `A·B = {a + b mod 1}`.
    pub fn product(&self, other: &Self) -> Self {
        let mut sums = Vec::with_capacity(self.arcs.len() * other.arcs.len());
        for a in &self.arcs {
            for b in &other.arcs {
                sums.push(arc_sum(a, b));
            }
        }
        Self::new(sums)
    }

    pub fn to_f64(&self) -> ArcSet<f64> {
        ArcSet {
            arcs: self
                .arcs
                .iter()
                .map(|a| Arc {
                    start: a.start.to_f64(),
                    len: a.len.to_f64(),
                    start_closed: a.start_closed,
                    end_closed: a.end_closed,
                })
                .collect(),
        }
    }
}

fn arc_sum<S: ArcScalar>(a: &Arc<S>, b: &Arc<S>) -> Arc<S> {
    Arc {
        start: a.start.clone() + b.start.clone(),
        len: a.len.clone() + b.len.clone(),
        start_closed: a.start_closed && b.start_closed,
        end_closed: a.end_closed && b.end_closed,
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArcSetError {
    #[error("arc {0} has length outside [0, 1]")]
    BadArc(usize),
    #[error("flag list length {flags} does not match {arcs} arcs")]
    FlagCount { arcs: usize, flags: usize },
    #[error("X meets its inverse")]
    SelfInverseOverlap,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ArcSetDump {
    arcs: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    closed: Option<Vec<[bool; 2]>>,
}

impl ArcSet<f64> {
    /// `{"arcs":[[a,b],...]}`; optional `"closed":[[bool,bool],...]` flags,
    /// half-open when absent.
    pub fn to_json(&self) -> String {
        let half_open = self.arcs.iter().all(|a| a.start_closed && !a.end_closed);
        let dump = ArcSetDump {
            arcs: self.arcs.iter().map(|a| [a.start, a.end()]).collect(),
            closed: (!half_open).then(|| {
                self.arcs
                    .iter()
                    .map(|a| [a.start_closed, a.end_closed])
                    .collect()
            }),
        };
        serde_json::to_string(&dump).expect("arc set serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, Box<dyn std::error::Error + Send + Sync>> {
        let dump: ArcSetDump = serde_json::from_str(text)?;
        let flags = match dump.closed {
            Some(f) if f.len() != dump.arcs.len() => {
                return Err(ArcSetError::FlagCount {
                    arcs: dump.arcs.len(),
                    flags: f.len(),
                }
                .into());
            }
            Some(f) => f,
            None => vec![[true, false]; dump.arcs.len()],
        };
        let mut arcs = Vec::new();
        for (i, ([a, b], [sc, ec])) in dump.arcs.into_iter().zip(flags).enumerate() {
            let len = b - a;
            if !(0.0..=1.0 + 1e-12).contains(&len) {
                return Err(ArcSetError::BadArc(i).into());
            }
            arcs.push(Arc {
                start: a,
                len,
                start_closed: sc,
                end_closed: ec,
            });
        }
        Ok(Self::new(arcs))
    }
}

/// Both sides of `μ(A·B) ≥ min(1, μA + μB)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KempermanVerdict {
    pub product_measure: f64,
    pub lower_bound: f64,
    pub holds: bool,
}

pub fn kemperman_check<S: ArcScalar>(a: &ArcSet<S>, b: &ArcSet<S>) -> KempermanVerdict {
    let product_measure = a.product(b).measure().to_f64();
    let lower_bound = (a.measure() + b.measure()).to_f64().min(1.0);
    KempermanVerdict {
        product_measure,
        lower_bound,
        holds: product_measure >= lower_bound - 1e-12,
    }
}

/// Whether `0 ∈ X·X·X`, with `(a, b, c) ∈ X³` summing to `0 mod 1` when so.
pub fn triple_product_contains_identity<S: ArcScalar>(x: &ArcSet<S>) -> Option<(S, S, S)> {
    if !x.product(x).product(x).contains(&S::zero()) {
        return None;
    }
    let arcs = x.arcs();
    for p in arcs {
        for q in arcs {
            for r in arcs {
                let sum = arc_sum(&arc_sum(p, q), r);
                if let Some(lambda) = hit_integer(&sum) {
                    return Some((p.at(&lambda), q.at(&lambda), r.at(&lambda)));
                }
            }
        }
    }
    None
}

/// `λ ∈ [0, 1]` with `start + λ·len` an integer admitted by the arc's flags.
fn hit_integer<S: ArcScalar>(arc: &Arc<S>) -> Option<S> {
    let s = arc.start.clone();
    let e = arc.end();
    let fl = s.floor_val();
    let mut candidates = vec![fl.clone(), fl.clone() + S::one(), fl + S::one() + S::one()];
    candidates.retain(|t| !lt(t, &s) && !lt(&e, t));
    for t in candidates {
        let at_start = eq(&t, &s);
        let at_end = eq(&t, &e);
        let ok = match (at_start, at_end) {
            (true, true) => arc.start_closed && arc.end_closed,
            (true, false) => arc.start_closed,
            (false, true) => arc.end_closed,
            (false, false) => true,
        };
        if ok {
            if eq(&arc.len, &S::zero()) {
                return Some(half());
            }
            let lambda = (t - s.clone()) / arc.len.clone();
            let lambda = if lambda < S::zero() {
                S::zero()
            } else if lambda > S::one() {
                S::one()
            } else {
                lambda
            };
            return Some(lambda);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    /// `μ(X ∪ X⁻¹ △ N)`.
    pub mismatch: f64,
    pub matches: bool,
    pub non_intersection_measure: f64,
    /// `μ(N) ≤ 2/3`.
    pub bound_holds: bool,
    pub vacuous: bool,
    pub pass: bool,
}

/// Checks `X ⊔ X⁻¹ = N` (up to measure `tol`) and `μ(N) ≤ 2/3` for a
/// non-intersection set `N`.
pub fn theorem2_structure_check<S: ArcScalar>(
    non_intersection: &ArcSet<S>,
    x: &ArcSet<S>,
    tol: f64,
) -> Result<StructureReport, ArcSetError> {
    let inv = x.inverse();
    if x.intersection(&inv).measure().to_f64() > tol {
        return Err(ArcSetError::SelfInverseOverlap);
    }
    let mismatch = x
        .union(&inv)
        .symmetric_difference(non_intersection)
        .measure()
        .to_f64();
    let non_intersection_measure = non_intersection.measure().to_f64();
    let vacuous = non_intersection.is_empty();
    let matches = mismatch <= tol;
    let bound_holds = non_intersection_measure <= 2.0 / 3.0 + tol;
    Ok(StructureReport {
        mismatch,
        matches,
        non_intersection_measure,
        bound_holds,
        vacuous,
        pass: matches && bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational64;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn inverse_reflects() {
        let a = ArcSet::from_intervals(&[(q(1, 10), q(3, 10))]);
        let inv = a.inverse();
        assert_eq!(inv.arcs().len(), 1);
        let arc = &inv.arcs()[0];
        assert_eq!(
            (arc.start, arc.end(), arc.start_closed, arc.end_closed),
            (q(7, 10), q(9, 10), false, true)
        );
        assert_eq!(inv.inverse(), a);
        assert!(ArcSet::<Q>::full().inverse().is_full());
    }

    #[test]
    fn arc_lengths_add() {
        let a = ArcSet::from_intervals(&[(q(0, 1), q(3, 10))]);
        let b = ArcSet::from_intervals(&[(q(1, 2), q(9, 10))]);
        let p = a.product(&b);
        assert_eq!(p.arcs().len(), 1);
        assert_eq!(p.measure(), q(7, 10));
        assert!(a.product(&ArcSet::full()).is_full());
        assert!(ArcSet::<Q>::empty().product(&a).is_empty());
    }

    #[test]
    fn wrap_and_complement() {
        let a = ArcSet::from_intervals(&[(q(9, 10), q(11, 10)), (q(1, 2), q(3, 5))]);
        assert_eq!(a.arcs().len(), 2);
        assert_eq!(a.measure(), q(3, 10));
        assert!(a.contains(&q(0, 1)) && a.contains(&q(19, 20)) && !a.contains(&q(1, 10)));
        let c = a.complement();
        assert_eq!(c.measure(), q(7, 10));
        assert!(c.contains(&q(1, 10)) && !c.contains(&q(0, 1)));
        assert!(a.union(&c).is_full());
        assert!(a.intersection(&c).is_empty());
    }

    #[test]
    fn open_and_closed_touching() {
        let a = ArcSet::new([Arc::open(q(0, 1), q(1, 2)), Arc::open(q(1, 2), q(1, 1))]);
        assert_eq!(a.arcs().len(), 2);
        assert!(!a.contains(&q(1, 2)) && !a.contains(&q(0, 1)));
        let b = ArcSet::new([Arc::closed(q(1, 2), q(1, 2)), Arc::closed(q(0, 1), q(0, 1))]);
        assert!(a.union(&b).is_full());
    }

    #[test]
    fn triple_boundary() {
        let x = ArcSet::new([Arc::open(q(0, 1), q(1, 3))]);
        assert_eq!(x.product(&x).product(&x).measure(), q(1, 1));
        assert!(triple_product_contains_identity(&x).is_none());
        let y = ArcSet::new([Arc::open(q(0, 1), q(1, 3) + q(1, 100))]);
        let (a, b, c) = triple_product_contains_identity(&y).unwrap();
        assert!(y.contains(&a) && y.contains(&b) && y.contains(&c));
        assert_eq!(frac(a + b + c), q(0, 1));
        let z = ArcSet::new([Arc::closed(q(0, 1), q(1, 3))]);
        assert!(triple_product_contains_identity(&z).is_some());
    }

    #[test]
    fn float_mode_matches_rational_on_triples() {
        let x = ArcSet::new([Arc::open(0.0, 1.0 / 3.0)]);
        assert!(triple_product_contains_identity(&x).is_none());
        let y = ArcSet::new([Arc::open(0.0, 1.0 / 3.0 + 0.01)]);
        assert!(triple_product_contains_identity(&y).is_some());
    }

    #[test]
    fn kemperman_equality_on_arcs() {
        let a = ArcSet::from_intervals(&[(q(1, 5), q(1, 2))]);
        let b = ArcSet::from_intervals(&[(q(0, 1), q(2, 5))]);
        let v = kemperman_check(&a, &b);
        assert!(v.holds);
        assert!((v.product_measure - 0.7).abs() < 1e-15 && (v.lower_bound - 0.7).abs() < 1e-15);
    }

    #[test]
    fn structure_fixture_is_extremal() {
        let n = ArcSet::new([Arc::open(q(2, 3), q(4, 3))]);
        let x = ArcSet::new([Arc::open(q(0, 1), q(1, 3))]);
        let r = theorem2_structure_check(&n, &x, 1e-12).unwrap();
        assert!(r.pass && r.matches && r.bound_holds && !r.vacuous);
        assert_eq!(r.non_intersection_measure, 2.0 / 3.0);
        let r = theorem2_structure_check(&ArcSet::empty(), &ArcSet::<Q>::empty(), 1e-12).unwrap();
        assert!(r.vacuous && r.pass);
        let big = ArcSet::new([Arc::open(q(13, 20), q(27, 20))]);
        let xb = ArcSet::new([Arc::open(q(0, 1), q(7, 20))]);
        let r = theorem2_structure_check(&big, &xb, 1e-12).unwrap();
        assert!(r.matches && !r.bound_holds && !r.pass);
        let overlap = ArcSet::from_intervals(&[(q(-1, 10), q(1, 10))]);
        assert_eq!(
            theorem2_structure_check(&n, &overlap, 1e-12),
            Err(ArcSetError::SelfInverseOverlap)
        );
    }

    #[test]
    fn json_round_trip() {
        let a = ArcSet::from_intervals(&[(0.9, 1.1), (0.25, 0.5)]);
        let back = ArcSet::from_json(&a.to_json()).unwrap();
        assert_eq!(a, back);
        let o = ArcSet::new([Arc::open(0.0, 1.0 / 3.0)]);
        assert_eq!(ArcSet::from_json(&o.to_json()).unwrap(), o);
        assert!(ArcSet::from_json(r#"{"arcs":[[0.5,0.2]]}"#).is_err());
    }
}
