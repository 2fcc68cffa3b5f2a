//! Scalar abstraction shared by the geometric modules.
//!
//! Everything numeric in the crate is generic over [`Real`], implemented for
//! `f32` and `f64`. The arc algebra uses its own [`ArcScalar`](crate::circle_sets::ArcScalar)
//! so that exact rationals can take part as well.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point scalar used by curves, solvers and meshes.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + serde::Serialize
    + for<'de> serde::Deserialize<'de>
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub type C<T> = Complex<T>;

/// `x mod 2π` in `[0, 2π)`.
#[inline]
pub fn wrap_tau<T: Real>(x: T) -> T {
    let tau = T::TAU();
    let r = x % tau;
    let r = if r < T::zero() { r + tau } else { r };
    if r >= tau {
        T::zero()
    } else {
        r
    }
}

/// Signed difference `a - b` reduced to `(-π, π]`.
#[inline]
pub fn angle_diff<T: Real>(a: T, b: T) -> T {
    let d = wrap_tau(a - b);
    if d > T::PI() {
        d - T::TAU()
    } else {
        d
    }
}

/// Argument of `z` in `[0, 2π)`.
#[inline]
pub fn arg_tau<T: Real>(z: C<T>) -> T {
    wrap_tau(z.im.atan2(z.re))
}

/// Unit complex number `e^{i t}`.
#[inline]
pub fn cis<T: Real>(t: T) -> C<T> {
    C::new(t.cos(), t.sin())
}
