//! Dense and band-limited LU factorization with partial pivoting.

use crate::error::{Error, Result};

/// Solve the dense square system `A x = b` by LU with partial pivoting.
///
/// `a` is row-major `n x n` and is not modified. Fails on structurally or
/// numerically singular input (zero pivot after pivoting).
pub fn lu_solve(a: &[f64], n: usize, b: &[f64]) -> Result<Vec<f64>> {
    let (lu, piv) = lu_factor(a, n)?;
    let mut x = b.to_vec();
    // The factorization swaps full rows, multipliers included, so the whole
    // permutation must land on b before the triangular sweeps.
    for k in 0..n {
        x.swap(k, piv[k]);
    }
    for k in 0..n {
        for i in (k + 1)..n {
            x[i] -= lu[i * n + k] * x[k];
        }
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            x[i] -= lu[i * n + k] * x[k];
        }
        x[i] /= lu[i * n + i];
    }
    Ok(x)
}

/// In-place Doolittle factorization `P A = L U`; returns the packed factors
/// and the pivot row chosen at each elimination step.
pub fn lu_factor(a: &[f64], n: usize) -> Result<(Vec<f64>, Vec<usize>)> {
    if a.len() != n * n {
        return Err(Error::domain("matrix buffer does not match dimension"));
    }
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut lu = a.to_vec();
    let mut piv = vec![0usize; n];
    for k in 0..n {
        let mut p = k;
        for i in (k + 1)..n {
            if lu[i * n + k].abs() > lu[p * n + k].abs() {
                p = i;
            }
        }
        piv[k] = p;
        if p != k {
            for j in 0..n {
                lu.swap(k * n + j, p * n + j);
            }
        }
        let pivot = lu[k * n + k];
        if pivot.abs() <= f64::EPSILON * scale {
            return Err(Error::numeric(format!(
                "singular matrix: pivot {pivot:.3e} at column {k}"
            )));
        }
        for i in (k + 1)..n {
            let m = lu[i * n + k] / pivot;
            lu[i * n + k] = m;
            for j in (k + 1)..n {
                lu[i * n + j] -= m * lu[k * n + j];
            }
        }
    }
    Ok((lu, piv))
}

/// LU factorization of a band matrix with `m1` subdiagonals and `m2`
/// superdiagonals, partial pivoting confined to the band.
///
/// Compact storage: row `i` of the input holds `A[i][i - m1 + j]` at position
/// `j` for `j = 0..m1+m2`, with out-of-range entries zero. This is the classic
/// band-diagonal scheme; pivoting costs one extra subdiagonal's worth of
/// workspace that lives in `al`.
pub struct BandedLu {
    n: usize,
    m1: usize,
    mm: usize,
    a: Vec<f64>,
    al: Vec<f64>,
    indx: Vec<usize>,
    min_pivot: f64,
    scale: f64,
}

impl BandedLu {
    pub fn factor(n: usize, m1: usize, m2: usize, rows: Vec<f64>) -> Result<Self> {
        let mm = m1 + m2 + 1;
        if rows.len() != n * mm || n == 0 {
            return Err(Error::domain("band buffer does not match dimensions"));
        }
        let scale = rows.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut a = rows;
        let mut al = vec![0.0; n * m1];
        let mut indx = vec![0usize; n];
        // Left-justify the first m1 rows so a[i][0] is each row's leading entry.
        for i in 0..m1.min(n) {
            let shift = m1 - i;
            for j in 0..(mm - shift) {
                a[i * mm + j] = a[i * mm + j + shift];
            }
            for j in (mm - shift)..mm {
                a[i * mm + j] = 0.0;
            }
        }
        let mut min_pivot = f64::INFINITY;
        for k in 0..n {
            let hi = (k + m1 + 1).min(n);
            let mut p = k;
            for i in (k + 1)..hi {
                if a[i * mm].abs() > a[p * mm].abs() {
                    p = i;
                }
            }
            indx[k] = p;
            if p != k {
                for j in 0..mm {
                    a.swap(k * mm + j, p * mm + j);
                }
            }
            let pivot = a[k * mm];
            if pivot == 0.0 {
                return Err(Error::numeric(format!(
                    "singular band matrix: zero pivot at column {k}"
                )));
            }
            min_pivot = min_pivot.min(pivot.abs());
            for i in (k + 1)..hi {
                let dum = a[i * mm] / pivot;
                al[k * m1 + (i - k - 1)] = dum;
                for j in 1..mm {
                    a[i * mm + j - 1] = a[i * mm + j] - dum * a[k * mm + j];
                }
                a[i * mm + mm - 1] = 0.0;
            }
        }
        Ok(BandedLu {
            n,
            m1,
            mm,
            a,
            al,
            indx,
            min_pivot,
            scale,
        })
    }

    /// Smallest pivot magnitude relative to the matrix scale; a vanishing
    /// ratio flags near-singularity (e.g. a frequency sitting on the
    /// discrete Dirichlet spectrum).
    pub fn pivot_ratio(&self) -> f64 {
        if self.scale > 0.0 {
            self.min_pivot / self.scale
        } else {
            0.0
        }
    }

    /// Solve in place using the stored factorization.
    pub fn solve(&self, b: &mut [f64]) {
        let (n, m1, mm) = (self.n, self.m1, self.mm);
        assert_eq!(b.len(), n, "right-hand side length mismatch");
        for k in 0..n {
            let p = self.indx[k];
            if p != k {
                b.swap(k, p);
            }
            let hi = (k + m1 + 1).min(n);
            for i in (k + 1)..hi {
                b[i] -= self.al[k * m1 + (i - k - 1)] * b[k];
            }
        }
        let mut l = 1;
        for i in (0..n).rev() {
            let mut dum = b[i];
            for k in 1..l {
                dum -= self.a[i * mm + k] * b[k + i];
            }
            b[i] = dum / self.a[i * mm];
            if l < mm {
                l += 1;
            }
        }
    }
}
