//! Cyclic Jacobi eigensolver for dense symmetric matrices.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a symmetric `n x n` matrix given in row-major order.
///
/// Returns eigenvalues in ascending order and the matching eigenvectors as
/// row-major columns of an orthogonal matrix (`vectors[i * n + k]` is
/// component `i` of eigenvector `k`). Classic cyclic Jacobi: sweep all
/// off-diagonal pairs, rotating each one to zero, until the off-diagonal mass
/// falls below `off_tol` times the matrix scale.
pub fn jacobi_eigen(matrix: &[f64], n: usize, off_tol: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if matrix.len() != n * n {
        return Err(Error::domain("matrix buffer does not match dimension"));
    }
    if n == 0 {
        return Ok((vec![], vec![]));
    }
    let scale = matrix.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    let sym_defect = (0..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .fold(0.0f64, |m, (i, j)| {
            m.max((matrix[i * n + j] - matrix[j * n + i]).abs())
        });
    if sym_defect > 1e-9 * scale {
        return Err(Error::domain(format!(
            "matrix is not symmetric: defect {sym_defect:.3e} vs scale {scale:.3e}"
        )));
    }

    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p * n + q].abs());
            }
        }
        if off <= off_tol * scale {
            return Ok(sorted(a, v, n));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 0.1 * off_tol * scale {
                    continue;
                }
                // Rotation angle from the standard stable formulas.
                let theta = 0.5 * (a[q * n + q] - a[p * n + p]) / apq;
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                let app = a[p * n + p];
                let aqq = a[q * n + q];
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for i in 0..n {
                    if i != p && i != q {
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        a[i * n + p] = aip - s * (aiq + tau * aip);
                        a[i * n + q] = aiq + s * (aip - tau * aiq);
                        a[p * n + i] = a[i * n + p];
                        a[q * n + i] = a[i * n + q];
                    }
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = vip - s * (viq + tau * vip);
                    v[i * n + q] = viq + s * (vip - tau * viq);
                }
            }
        }
    }
    Err(Error::numeric(format!(
        "Jacobi eigensolver exceeded {MAX_SWEEPS} sweeps"
    )))
}

fn sorted(a: Vec<f64>, v: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&k| a[k * n + k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_k, &old_k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + new_k] = v[i * n + old_k];
        }
    }
    (values, vectors)
}
