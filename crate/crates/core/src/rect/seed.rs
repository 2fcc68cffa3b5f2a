use std::collections::HashMap;

use super::{SeedCandidate, SolveError};
use crate::curve::{param, JordanCurve};
use crate::scalar::{cis, Real, C};

#[derive(Debug, Clone, Copy)]
struct SampledChord<T> {
    i: usize,
    j: usize,
    mid: C<T>,
    sq: C<T>,
    len: T,
}

/// Sampled chord table with the θ-independent part of the pairing done once:
/// chord pairs whose midpoints and lengths already agree to grid resolution.
#[derive(Debug, Clone)]
pub struct SeedIndex<T> {
    n: usize,
    diameter: T,
    spacing: T,
    chords: Vec<SampledChord<T>>,
    pairs: Vec<(u32, u32)>,
}

impl<T: Real> SeedIndex<T> {
    pub fn new(curve: &JordanCurve<T>, n: usize) -> Result<Self, SolveError> {
        if n < 32 {
            return Err(SolveError::SeedGridTooSmall(n));
        }
        let pts = curve.sample(n);
        let spacing = (0..n)
            .map(|j| (pts[(j + 1) % n] - pts[j]).norm())
            .fold(T::zero(), T::max);
        let diameter = pts
            .iter()
            .flat_map(|p| pts.iter().map(move |q| (*p - *q).norm()))
            .fold(T::zero(), T::max);
        let min_len = spacing * T::lit(4.0);
        let mut chords = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let d = pts[i] - pts[j];
                let len = d.norm();
                if len >= min_len {
                    chords.push(SampledChord {
                        i,
                        j,
                        mid: (pts[i] + pts[j]) / T::lit(2.0),
                        sq: d * d,
                        len,
                    });
                }
            }
        }

        let cell = diameter / T::from_usize_lossy(n).sqrt();
        let key = |m: C<T>| {
            (
                (m.re / cell).floor().to_i64().unwrap(),
                (m.im / cell).floor().to_i64().unwrap(),
            )
        };
        let mut buckets: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
        for (idx, c) in chords.iter().enumerate() {
            buckets.entry(key(c.mid)).or_default().push(idx as u32);
        }
        let mid_tol = spacing * T::lit(1.5);
        let mut pairs = Vec::new();
        for (a_idx, a) in chords.iter().enumerate() {
            let (kx, ky) = key(a.mid);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    let Some(bucket) = buckets.get(&(kx + dx, ky + dy)) else {
                        continue;
                    };
                    for &b_idx in bucket {
                        if b_idx as usize <= a_idx {
                            continue;
                        }
                        let b = &chords[b_idx as usize];
                        if a.i == b.i || a.i == b.j || a.j == b.i || a.j == b.j {
                            continue;
                        }
                        let len_tol = spacing * T::lit(4.0) * a.len.max(b.len);
                        if (a.mid - b.mid).norm() <= mid_tol
                            && (a.len * a.len - b.len * b.len).abs() <= len_tol
                        {
                            pairs.push((a_idx as u32, b_idx));
                        }
                    }
                }
            }
        }
        pairs.sort_unstable();
        Ok(Self {
            n,
            diameter,
            spacing,
            chords,
            pairs,
        })
    }

    pub fn diameter(&self) -> T {
        self.diameter
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Candidates at rotation `theta`, ascending by score.
    pub fn candidates(&self, theta: T) -> Vec<SeedCandidate<T>> {
        let rot = cis(theta);
        let mid_tol = self.spacing * T::lit(1.5);
        let mut out = Vec::new();
        for &(ai, bi) in &self.pairs {
            let (a, b) = (&self.chords[ai as usize], &self.chords[bi as usize]);
            let sq_tol = self.spacing * T::lit(4.0) * a.len.max(b.len);
            let dm = (a.mid - b.mid).norm() / mid_tol;
            for (p, q) in [(a, b), (b, a)] {
                let ds = (p.sq - rot * q.sq).norm() / sq_tol;
                let score = dm.max(ds);
                if score <= T::one() {
                    out.push(SeedCandidate {
                        x: param(p.i, self.n),
                        y: param(p.j, self.n),
                        z: param(q.i, self.n),
                        w: param(q.j, self.n),
                        score,
                    });
                }
            }
        }
        out.sort_by(|u, v| {
            u.score
                .partial_cmp(&v.score)
                .unwrap()
                .then(u.x.partial_cmp(&v.x).unwrap())
                .then(u.y.partial_cmp(&v.y).unwrap())
                .then(u.z.partial_cmp(&v.z).unwrap())
                .then(u.w.partial_cmp(&v.w).unwrap())
        });
        out
    }
}

/// Seed candidates for one rotation angle from `n` curve samples.
pub fn seed_search<T: Real>(
    curve: &JordanCurve<T>,
    theta: T,
    n: usize,
) -> Result<Vec<SeedCandidate<T>>, SolveError> {
    Ok(SeedIndex::new(curve, n)?.candidates(theta))
}
