//! Independent oracles shared by the integration tests. None of them call
//! into the solver, the mesh code, or the arc algebra under test.
#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rectspec_core::circle_sets::ArcSet;
use rectspec_core::Curve;

/// Brute-force rectangle search over an `n`-point parameter grid.
///
/// Chords of grid points are bucketed by midpoint; a rectangle at angle `θ`
/// is a pair of chords in neighboring buckets with `Δ₁² ≈ e^{iθ}Δ₂²`. The
/// tolerances scale with the grid step times the curve's top speed.
pub struct QuadrupleGrid {
    mids: Vec<Complex64>,
    deltas_sq: Vec<Complex64>,
    buckets: HashMap<(i64, i64), Vec<usize>>,
    pub cell: f64,
    pub tol: f64,
}

impl QuadrupleGrid {
    pub fn new(curve: &Curve, n: usize) -> Self {
        let pts: Vec<Complex64> = (0..n)
            .map(|i| curve.evaluate(TAU * i as f64 / n as f64))
            .collect();
        let step = TAU / n as f64;
        let speed = (0..4 * n)
            .map(|i| curve.derivative(TAU * i as f64 / (4 * n) as f64).norm())
            .fold(0.0, f64::max);
        let diam = pts
            .iter()
            .flat_map(|p| pts.iter().map(move |q| (p - q).norm()))
            .fold(0.0, f64::max);
        let cell = 2.0 * step * speed;
        let tol = 4.0 * step * speed * diam;
        let mut mids = Vec::new();
        let mut deltas_sq = Vec::new();
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let m = (pts[i] + pts[j]) / 2.0;
                let d = pts[i] - pts[j];
                buckets.entry(key(m, cell)).or_default().push(mids.len());
                mids.push(m);
                deltas_sq.push(d * d);
            }
        }
        Self {
            mids,
            deltas_sq,
            buckets,
            cell,
            tol,
        }
    }

    /// Whether some pair of distinct grid chords forms an approximate
    /// rectangle with diagonal angle `theta`.
    pub fn exists(&self, theta: f64) -> bool {
        let rot = Complex64::from_polar(1.0, theta);
        let min_len = self.cell * self.cell;
        for (p, m) in self.mids.iter().enumerate() {
            if self.deltas_sq[p].norm() < min_len {
                continue;
            }
            let (kx, ky) = key(*m, self.cell);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    let Some(list) = self.buckets.get(&(kx + dx, ky + dy)) else {
                        continue;
                    };
                    for &q in list {
                        if q != p
                            && (self.mids[q] - m).norm() <= self.cell
                            && (self.deltas_sq[p] - rot * self.deltas_sq[q]).norm() <= self.tol
                        {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

fn key(m: Complex64, cell: f64) -> (i64, i64) {
    ((m.re / cell).floor() as i64, (m.im / cell).floor() as i64)
}

/// `θ_i = πi/n`, `i = 1..=n`.
pub fn theta_grid(n: usize) -> Vec<f64> {
    (1..=n).map(|i| PI * i as f64 / n as f64).collect()
}

/// Central finite-difference Jacobian of `f: ℝ⁴ → ℝ⁴`.
pub fn fd_jacobian(f: impl Fn([f64; 4]) -> [f64; 4], q: [f64; 4], h: f64) -> [[f64; 4]; 4] {
    let mut jac = [[0.0; 4]; 4];
    for k in 0..4 {
        let (mut a, mut b) = (q, q);
        a[k] += h;
        b[k] -= h;
        let (fa, fb) = (f(a), f(b));
        for i in 0..4 {
            jac[i][k] = (fa[i] - fb[i]) / (2.0 * h);
        }
    }
    jac
}

/// Bitset of `2^bits` sample points `k / 2^bits` on the circle.
#[derive(Clone, PartialEq, Eq)]
pub struct Raster {
    words: Vec<u64>,
    pub len: usize,
}

impl Raster {
    pub fn of(set: &ArcSet<f64>, bits: u32) -> Self {
        let len = 1usize << bits;
        let mut r = Self {
            words: vec![0; len / 64],
            len,
        };
        for k in 0..len {
            if set.contains(&(k as f64 / len as f64)) {
                r.set(k);
            }
        }
        r
    }

    fn set(&mut self, k: usize) {
        self.words[k / 64] |= 1 << (k % 64);
    }

    pub fn get(&self, k: usize) -> bool {
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    /// Cyclic shift by `s` cells.
    fn shifted(&self, s: usize) -> Self {
        let mut out = Self {
            words: vec![0; self.words.len()],
            len: self.len,
        };
        for k in 0..self.len {
            if self.get(k) {
                out.set((k + s) % self.len);
            }
        }
        out
    }

    fn or(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// `{i + j : i ∈ self, j ∈ other}` on the grid, by brute force over the
    /// runs of `self`: a run of width `w` starting at `s` contributes `other`
    /// dilated by `w` and shifted by `s`.
    pub fn sumset(&self, other: &Self) -> Self {
        let mut out = Self {
            words: vec![0; self.words.len()],
            len: self.len,
        };
        for (s, w) in self.runs() {
            let mut dilated = other.clone();
            let mut have = 1;
            while have < w {
                let add = have.min(w - have);
                let sh = dilated.shifted(add);
                dilated.or(&sh);
                have += add;
            }
            out.or(&dilated.shifted(s));
        }
        out
    }

    /// Maximal cyclic runs `(start, width)` of set cells.
    fn runs(&self) -> Vec<(usize, usize)> {
        let n = self.len;
        if (0..n).all(|k| self.get(k)) {
            return vec![(0, n)];
        }
        let Some(first_gap) = (0..n).find(|&k| !self.get(k)) else {
            return vec![];
        };
        let mut runs = Vec::new();
        let mut k = 0;
        while k < n {
            let i = (first_gap + k) % n;
            if self.get(i) {
                let mut w = 0;
                while w < n && self.get((i + w) % n) {
                    w += 1;
                }
                runs.push((i, w));
                k += w;
            } else {
                k += 1;
            }
        }
        runs
    }
}

/// Cyclic distance on ℝ/ℤ.
pub fn circle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Every grid point where `set` and `raster` disagree lies within `cells`
/// grid steps of an endpoint of `set`. Returns the first offending point.
pub fn raster_agrees(set: &ArcSet<f64>, raster: &Raster, cells: f64) -> Result<(), f64> {
    let n = raster.len as f64;
    let ends: Vec<f64> = set
        .arcs()
        .iter()
        .flat_map(|a| [a.start, a.start + a.len])
        .collect();
    for k in 0..raster.len {
        let p = k as f64 / n;
        if set.contains(&p) != raster.get(k)
            && !ends.iter().any(|e| circle_dist(*e, p) <= cells / n + 1e-12)
        {
            return Err(p);
        }
    }
    Ok(())
}
