//! Torus links `T(n, k) = {(g, r) ∈ S¹ × S¹ : r^k = g^n}` and winding bookkeeping
//! for strip boundaries.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::scalar::{angle_diff, Real, C};

/// The `(n, k)` torus link. Each of its `gcd(n, k)` components winds `k/gcd`
/// times around the `ℂ` circle and `n/gcd` times around the `S¹` factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusLinkSpec {
    pub n: u32,
    pub k: u32,
}

/// Winding numbers of a closed boundary loop: around the `S¹` coordinate
/// (`phi`) and of the `ℂ` coordinate around a center (`g`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Winding {
    pub phi: i64,
    pub g: i64,
}

impl TorusLinkSpec {
    pub const fn new(n: u32, k: u32) -> Self {
        Self { n, k }
    }

    pub fn components(&self) -> u32 {
        self.n.gcd(&self.k)
    }

    /// Per-component winding pattern.
    pub fn component_winding(&self) -> Winding {
        let c = self.components().max(1) as i64;
        Winding {
            phi: self.n as i64 / c,
            g: self.k as i64 / c,
        }
    }

    /// Membership of `(g, r)` after projecting both to the unit circle.
    pub fn contains<T: Real>(&self, g: C<T>, r: C<T>, tol: T) -> bool {
        let g = g / g.norm();
        let r = r / r.norm();
        (r.powu(self.k) - g.powu(self.n)).norm() < tol
    }

    /// Whether a family of boundary loops realizes this link's component pattern
    /// (up to orientation of each loop).
    pub fn matches(&self, loops: &[Winding]) -> bool {
        let want = self.component_winding();
        loops.len() == self.components() as usize
            && loops.iter().all(|w| {
                (w.phi == want.phi && w.g == want.g) || (w.phi == -want.phi && w.g == -want.g)
            })
    }
}

/// Winding of a closed loop of `(ℂ point, phi)` samples; the `ℂ` winding is
/// measured around `center`.
pub fn loop_winding<T: Real>(points: &[(C<T>, T)], center: C<T>) -> Winding {
    let n = points.len();
    let (mut dphi, mut dg) = (T::zero(), T::zero());
    for i in 0..n {
        let (p0, f0) = points[i];
        let (p1, f1) = points[(i + 1) % n];
        dphi += angle_diff(f1, f0);
        let a0 = (p0 - center).im.atan2((p0 - center).re);
        let a1 = (p1 - center).im.atan2((p1 - center).re);
        dg += angle_diff(a1, a0);
    }
    let turns = |x: T| (x / T::TAU()).round().to_i64().unwrap_or(0);
    Winding {
        phi: turns(dphi),
        g: turns(dg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cis;

    #[test]
    fn component_counts() {
        assert_eq!(TorusLinkSpec::new(2, 1).components(), 1);
        assert_eq!(TorusLinkSpec::new(4, 2).components(), 2);
        assert_eq!(TorusLinkSpec::new(6, 3).components(), 3);
        assert_eq!(
            TorusLinkSpec::new(4, 2).component_winding(),
            Winding { phi: 2, g: 1 }
        );
    }

    #[test]
    fn membership() {
        let t21 = TorusLinkSpec::new(2, 1);
        let g = cis(0.7f64);
        assert!(t21.contains(g, g * g, 1e-12));
        assert!(!t21.contains(g, -(g * g), 1e-6));
        assert!(TorusLinkSpec::new(4, 2).contains(g, -(g * g), 1e-12));
    }

    #[test]
    fn winding_of_t21_loop() {
        let pts: Vec<(C<f64>, f64)> = (0..100)
            .map(|j| {
                let a = std::f64::consts::TAU * j as f64 / 100.0;
                (cis(a), crate::scalar::wrap_tau(2.0 * a))
            })
            .collect();
        let w = loop_winding(&pts, C::new(0.0, 0.0));
        assert_eq!(w, Winding { phi: 2, g: 1 });
        assert!(TorusLinkSpec::new(2, 1).matches(&[w]));
        assert!(TorusLinkSpec::new(4, 2).matches(&[w, w]));
        assert!(!TorusLinkSpec::new(4, 2).matches(&[w]));
    }
}
