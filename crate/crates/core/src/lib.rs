//! Inscribed rectangles of smooth Jordan curves through the chord-space
//! Möbius strip, with the supporting strip ordering and circle arc algebra.
//!
//! The numeric core is generic over [`scalar::Real`] (`f32`, `f64`); the arc
//! algebra also runs on exact rationals. Aliases below fix the common choices.

// `!(x > 0)` guards reject NaN; dense kernels index several arrays at once.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod chord;
pub mod circle_sets;
pub mod corpus;
pub mod curve;
pub mod io;
pub mod linalg;
pub mod ordering;
pub mod rect;
pub mod scalar;
pub mod spectrum;
pub mod strip_mesh;
pub mod suites;
pub mod torus;

pub type Curve = curve::JordanCurve<f64>;
pub type CurveF32 = curve::JordanCurve<f32>;
pub type Witness = rect::RectangleWitness<f64>;
pub type Report = spectrum::SpectrumReport<f64>;
pub type Mesh = strip_mesh::StripMesh<f64>;
pub type Dome = strip_mesh::DomeStrip<f64>;
pub type FloatArcSet = circle_sets::ArcSet<f64>;
pub type RationalArcSet = circle_sets::ArcSet<num_rational::Rational64>;
