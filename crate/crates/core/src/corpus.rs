//! Builtin curves and dome strips.

use std::f64::consts::PI;

use crate::curve::{CurveError, JordanCurve};
use crate::scalar::cis;
use crate::strip_mesh::DomeStrip;

/// Truncation order and decay of the seeded random corpus curves.
pub const RANDOM_ORDER: usize = 6;
pub const RANDOM_DECAY: f64 = 0.2;

pub const CURVES: [&str; 8] = [
    "circle",
    "ellipse-2-1",
    "ellipse-4-1",
    "random-1",
    "random-2",
    "random-3",
    "random-4",
    "random-5",
];

#[derive(Debug, Clone, PartialEq)]
pub enum Builtin {
    Curve(JordanCurve<f64>),
    Dome(DomeStrip<f64>),
}

pub fn random_curve(seed: u64) -> Result<JordanCurve<f64>, CurveError> {
    JordanCurve::random_smooth(seed, RANDOM_ORDER, RANDOM_DECAY, 100)
}

pub fn builtin_curve(name: &str) -> Option<JordanCurve<f64>> {
    match builtin(name)? {
        Builtin::Curve(c) => Some(c),
        Builtin::Dome(_) => None,
    }
}

/// `circle`, `ellipse-2-1`, `ellipse-4-1`, `random-N`, and `dome-H` with an
/// optional `-rot-half`, `-rot-third` or `-rot-two-thirds` suffix.
pub fn builtin(name: &str) -> Option<Builtin> {
    match name {
        "circle" => return Some(Builtin::Curve(JordanCurve::unit_circle())),
        "ellipse-2-1" => return Some(Builtin::Curve(JordanCurve::ellipse(2.0, 1.0))),
        "ellipse-4-1" => return Some(Builtin::Curve(JordanCurve::ellipse(4.0, 1.0))),
        _ => {}
    }
    if let Some(seed) = name.strip_prefix("random-") {
        let seed: u64 = seed.parse().ok()?;
        return random_curve(seed).ok().map(Builtin::Curve);
    }
    let rest = name.strip_prefix("dome-")?;
    let (height, turn) = match rest.split_once("-rot-") {
        None => (rest, 0.0),
        Some((h, "half")) => (h, 0.5),
        Some((h, "third")) => (h, 1.0 / 3.0),
        Some((h, "two-thirds")) => (h, 2.0 / 3.0),
        Some(_) => return None,
    };
    let height: f64 = height.parse().ok()?;
    DomeStrip::new(height, cis(2.0 * PI * turn))
        .ok()
        .map(Builtin::Dome)
}
