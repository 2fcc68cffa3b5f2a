//! Tiny dense linear algebra for the 4×4 / 4×5 systems of the solvers and the
//! small Gram systems of the mesh distance queries.

use crate::scalar::Real;

/// Gaussian elimination with partial pivoting. `None` when a pivot falls below
/// `rel_tol` times the largest entry of `a`.
pub fn solve<T: Real, const N: usize>(
    mut a: [[T; N]; N],
    mut b: [T; N],
    rel_tol: T,
) -> Option<[T; N]> {
    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .fold(T::zero(), |m, v| m.max(v.abs()));
    if scale == T::zero() || !scale.is_finite() {
        return None;
    }
    for col in 0..N {
        let piv =
            (col..N).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[piv][col].abs() <= rel_tol * scale {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..N {
            let f = a[row][col] / a[col][col];
            if f == T::zero() {
                continue;
            }
            for k in col..N {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = [T::zero(); N];
    for row in (0..N).rev() {
        let mut s = b[row];
        for k in row + 1..N {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

/// Damped least squares `(AᵀA + λI) x = Aᵀ b`.
pub fn damped_lstsq<T: Real, const M: usize, const N: usize>(
    a: &[[T; N]; M],
    b: &[T; M],
    lambda: T,
) -> Option<[T; N]> {
    let mut ata = [[T::zero(); N]; N];
    let mut atb = [T::zero(); N];
    for i in 0..N {
        for j in 0..N {
            ata[i][j] = (0..M).map(|k| a[k][i] * a[k][j]).sum();
        }
        ata[i][i] += lambda;
        atb[i] = (0..M).map(|k| a[k][i] * b[k]).sum();
    }
    solve(ata, atb, T::epsilon())
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn sym_eigenvalues<T: Real, const N: usize>(mut a: [[T; N]; N]) -> [T; N] {
    for _sweep in 0..64 {
        let off: T = (0..N)
            .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let diag: T = (0..N).map(|i| a[i][i] * a[i][i]).sum();
        if off <= T::epsilon() * T::epsilon() * diag || off == T::zero() {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                if a[p][q] == T::zero() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (T::lit(2.0) * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..N {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev = [T::zero(); N];
    for i in 0..N {
        ev[i] = a[i][i];
    }
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

/// Numerical rank of an `M×N` matrix from the eigenvalues of `A Aᵀ`.
pub fn numerical_rank<T: Real, const M: usize, const N: usize>(
    a: &[[T; N]; M],
    rel_tol: T,
) -> usize {
    let mut g = [[T::zero(); M]; M];
    for i in 0..M {
        for j in 0..M {
            g[i][j] = (0..N).map(|k| a[i][k] * a[j][k]).sum();
        }
    }
    let ev = sym_eigenvalues(g);
    let top = ev[M - 1];
    if top <= T::zero() {
        return 0;
    }
    ev.iter().filter(|&&e| e > rel_tol * top).count()
}
