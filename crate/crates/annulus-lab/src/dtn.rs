//! Independent finite-difference cross-check of the boundary spectrum.
//!
//! Instead of separating variables, this module discretizes the band as a
//! rectangle `[-s0, s0] x S^1` with the conservative five-point scheme for
//! `div(p grad u) + alpha sqrt(EG) u = 0`, `p` sampled at half nodes, solves
//! the interior Dirichlet problem for every boundary basis vector through
//! one shared banded LU factorization, and reads off the outward conormal
//! derivative with a one-sided three-point stencil. The resulting
//! boundary-to-flux matrix is symmetrized (the boundary mass weights are
//! uniform, so the plain average is the right projection) and fed to the
//! Jacobi eigensolver. Nothing here reuses the shooting code, so agreement
//! between the two spectra is a genuine cross-check.

use crate::error::{Error, Result};
use crate::numerics::{jacobi_eigen, BandedLu};
use crate::parallel::parallel_map;
use crate::rotational::AnnulusFamily;
use crate::tol::{EIG_TOL, PIVOT_RATIO_MIN};

/// Coarsest grids the oracle accepts; below this the one-sided flux stencil
/// and the wrap-around band structure stop making sense as an error gauge.
const MIN_NODES_S: usize = 64;
const MIN_NODES_THETA: usize = 64;

/// Symmetrized discrete boundary-to-flux map on the doubled circle.
pub struct DtnMatrix {
    pub n_s: usize,
    pub n_theta: usize,
    pub s0: f64,
    pub alpha: f64,
    /// Row-major `(2 n_theta) x (2 n_theta)`, left circle indices first.
    pub entries: Vec<f64>,
    /// `max |raw - raw^T|` relative to the largest raw entry.
    pub asym_defect: f64,
    /// Health of the interior factorization.
    pub pivot_ratio: f64,
}

/// Assemble the oracle for a band, sampling its metric coefficients.
pub fn dtn_matrix(
    family: &AnnulusFamily,
    s0: f64,
    alpha: f64,
    n_s: usize,
    n_theta: usize,
) -> Result<DtnMatrix> {
    if !(s0 > 0.0 && s0 < family.span()) {
        return Err(Error::domain(format!(
            "oracle width {s0} outside (0, {})",
            family.span()
        )));
    }
    dtn_matrix_with(
        |s| {
            let mc = family.metric_coeffs(s)?;
            Ok((mc.e, mc.g))
        },
        s0,
        alpha,
        n_s,
        n_theta,
    )
}

/// Assemble the oracle from arbitrary metric coefficients `s -> (E, G)`;
/// exposed so constant-coefficient dispersion tests can bypass the band.
pub fn dtn_matrix_with(
    coeff: impl Fn(f64) -> Result<(f64, f64)> + Sync,
    s0: f64,
    alpha: f64,
    n_s: usize,
    n_theta: usize,
) -> Result<DtnMatrix> {
    if n_s < MIN_NODES_S || n_theta < MIN_NODES_THETA {
        return Err(Error::ParamRange(format!(
            "oracle grid {n_s} x {n_theta} below the floor {MIN_NODES_S} x {MIN_NODES_THETA}"
        )));
    }
    if n_theta % 2 != 0 {
        return Err(Error::ParamRange(format!(
            "circle resolution {n_theta} must be even so the half turn maps nodes to nodes"
        )));
    }
    if !(alpha.is_finite() && s0 > 0.0) {
        return Err(Error::domain("oracle needs a finite frequency and positive width"));
    }

    let h_s = 2.0 * s0 / (n_s - 1) as f64;
    let h_t = 2.0 * std::f64::consts::PI / n_theta as f64;
    let s_at = |i: usize| -s0 + h_s * i as f64;

    // Node and half-node coefficient tables.
    let mut q = vec![0.0; n_s]; // sqrt(E/G) at nodes
    let mut wgt = vec![0.0; n_s]; // sqrt(EG) at nodes
    let mut e_node = vec![0.0; n_s];
    for i in 0..n_s {
        let (e, g) = coeff(s_at(i))?;
        if !(e > 0.0 && g > 0.0) {
            return Err(Error::Geometry(format!("metric degenerates at s = {}", s_at(i))));
        }
        q[i] = (e / g).sqrt();
        wgt[i] = (e * g).sqrt();
        e_node[i] = e;
    }
    let mut p_half = vec![0.0; n_s - 1]; // sqrt(G/E) at half nodes
    for i in 0..n_s - 1 {
        let (e, g) = coeff(s_at(i) + 0.5 * h_s)?;
        p_half[i] = (g / e).sqrt();
    }

    // Interior unknowns, band-ordered sweep along s with the circle inner.
    let interior_rows = n_s - 2;
    let nu = interior_rows * n_theta;
    let m1 = n_theta;
    let mm = 2 * n_theta + 1;
    let inv_hs2 = 1.0 / (h_s * h_s);
    let inv_ht2 = 1.0 / (h_t * h_t);
    let mut rows = vec![0.0; nu * mm];
    for i in 1..=interior_rows {
        let row_q = q[i] * inv_ht2;
        let diag = -(p_half[i] + p_half[i - 1]) * inv_hs2 - 2.0 * row_q + alpha * wgt[i];
        for j in 0..n_theta {
            let k = (i - 1) * n_theta + j;
            let base = k * mm;
            let mut put = |col: usize, v: f64| {
                // slot index inside the band: col - (k - m1)
                rows[base + col + m1 - k] += v;
            };
            put(k, diag);
            put((i - 1) * n_theta + (j + 1) % n_theta, row_q);
            put((i - 1) * n_theta + (j + n_theta - 1) % n_theta, row_q);
            if i > 1 {
                put((i - 2) * n_theta + j, p_half[i - 1] * inv_hs2);
            }
            if i < interior_rows {
                put(i * n_theta + j, p_half[i] * inv_hs2);
            }
        }
    }
    let factor = BandedLu::factor(nu, m1, m1, rows)?;
    let pivot_ratio = factor.pivot_ratio();
    if pivot_ratio < PIVOT_RATIO_MIN {
        return Err(Error::numeric(format!(
            "interior operator nearly singular (pivot ratio {pivot_ratio:.3e}); \
             the frequency sits on the discrete clamped spectrum"
        )));
    }

    // One interior solve per boundary basis vector; the factorization is
    // shared read-only, so the solves fan out in parallel. Column b of the
    // raw matrix is the outward flux of the harmonic-at-frequency extension
    // of basis vector b.
    let nb = 2 * n_theta;
    let left_flux_scale = 1.0 / (2.0 * h_s * e_node[0].sqrt());
    let right_flux_scale = 1.0 / (2.0 * h_s * e_node[n_s - 1].sqrt());
    let columns = parallel_map(nb, |b| -> Vec<f64> {
        let mut rhs = vec![0.0; nu];
        if b < n_theta {
            rhs[b] = -p_half[0] * inv_hs2;
        } else {
            rhs[(interior_rows - 1) * n_theta + (b - n_theta)] =
                -p_half[n_s - 2] * inv_hs2;
        }
        factor.solve(&mut rhs);
        let x = rhs;
        let mut col = vec![0.0; nb];
        for j in 0..n_theta {
            let boundary_left = if b == j { 1.0 } else { 0.0 };
            let u1 = x[j];
            let u2 = x[n_theta + j];
            col[j] = -(-3.0 * boundary_left + 4.0 * u1 - u2) * left_flux_scale;
            let boundary_right = if b == n_theta + j { 1.0 } else { 0.0 };
            let v1 = x[(interior_rows - 1) * n_theta + j];
            let v2 = x[(interior_rows - 2) * n_theta + j];
            col[n_theta + j] = (3.0 * boundary_right - 4.0 * v1 + v2) * right_flux_scale;
        }
        col
    });

    let mut raw = vec![0.0; nb * nb];
    for (b, col) in columns.iter().enumerate() {
        for r in 0..nb {
            raw[r * nb + b] = col[r];
        }
    }
    let scale = raw.iter().fold(f64::MIN_POSITIVE, |m, v| m.max(v.abs()));
    let mut asym = 0.0f64;
    let mut entries = vec![0.0; nb * nb];
    for r in 0..nb {
        for c in 0..nb {
            asym = asym.max((raw[r * nb + c] - raw[c * nb + r]).abs());
            entries[r * nb + c] = 0.5 * (raw[r * nb + c] + raw[c * nb + r]);
        }
    }

    Ok(DtnMatrix {
        n_s,
        n_theta,
        s0,
        alpha,
        entries,
        asym_defect: asym / scale,
        pivot_ratio,
    })
}

/// Ascending eigenvalues of the symmetrized boundary-to-flux map.
pub fn dtn_spectrum(m: &DtnMatrix) -> Result<Vec<f64>> {
    let n = 2 * m.n_theta;
    let (values, _) = jacobi_eigen(&m.entries, n, EIG_TOL)?;
    Ok(values)
}
