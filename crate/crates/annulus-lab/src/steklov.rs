//! Boundary spectrum of a band at a fixed bulk frequency.
//!
//! Separating the rotation angle turns the boundary eigenvalue problem into
//! one radial ODE per angular index `m` and radial parity,
//!
//! ```text
//! w'' = -(log p)' w' + E (m^2 / G - alpha) w,      p = sqrt(G / E),
//! ```
//!
//! on `[0, s0]` with the symmetric initial data of the chosen parity. The
//! eigenvalue attached to that mode is the boundary logarithmic rate
//! `sigma = w'(s0) / (sqrt(E(s0)) w(s0))`; the angular factor contributes
//! multiplicity 1 for `m = 0` and 2 otherwise. Every integration runs at two
//! resolutions off one shared coefficient table, so the step-halving defect
//! is a genuine error estimate rather than a re-evaluation of the metric.

use crate::error::{Error, Result};
use crate::numerics::{brent, rk4_integrate};
use crate::parallel::parallel_map;
use crate::rotational::AnnulusFamily;
use crate::spaceform::SpaceFormSign;
use crate::tol::{ODE_FAIL_TOL, ToleranceConfig};
use serde::{Deserialize, Serialize};

/// Steps of the fine integration; the coarse one uses half as many.
const N_FINE: usize = 8192;
const N_COARSE: usize = N_FINE / 2;

/// Half-grid nodes shared by both resolutions.
const TABLE_LEN: usize = 2 * N_FINE + 1;

/// Dirichlet-sweep window and step for locating clamped eigenvalues.
const DIRICHLET_SWEEP_LO: f64 = -4.0;
const DIRICHLET_SWEEP_HI: f64 = 60.0;
const DIRICHLET_SWEEP_STEP: f64 = 0.5;

/// Radial symmetry class of a mode across the waist `s = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// The bulk frequency the laboratory pins to each model: twice the
/// curvature sign.
pub fn natural_frequency(eps: SpaceFormSign) -> f64 {
    2.0 * eps.eps()
}

/// Symmetry class of the full mode under the half-turn-with-reflection
/// isometry of the band: odd exactly when one of the angular index and the
/// radial parity is odd and the other is not.
pub fn antipodal_parity(m: u32, parity: Parity) -> Parity {
    let radial_odd = parity == Parity::Odd;
    let angular_odd = m % 2 == 1;
    if radial_odd != angular_odd {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// Radial ODE coefficients tabulated once on the half grid
/// `t_k = k s0 / (TABLE_LEN - 1)`. The fine integration reads consecutive
/// entries; the coarse one reads every other entry, so both see bitwise
/// identical coefficient values.
pub struct ModeCoeffs {
    s0: f64,
    lp: Vec<f64>,
    e: Vec<f64>,
    eg: Vec<f64>,
}

impl ModeCoeffs {
    pub fn build(family: &AnnulusFamily, s0: f64) -> Result<Self> {
        if !(s0 > 0.0 && s0 < family.span()) {
            return Err(Error::domain(format!(
                "mode table width {s0} outside (0, {})",
                family.span()
            )));
        }
        let rows = parallel_map(TABLE_LEN, |k| -> Result<[f64; 3]> {
            let t = s0 * (k as f64) / ((TABLE_LEN - 1) as f64);
            let mc = family.metric_coeffs(t)?;
            Ok([
                mc.dg / (2.0 * mc.g) - mc.de / (2.0 * mc.e),
                mc.e,
                mc.e / mc.g,
            ])
        });
        let mut lp = Vec::with_capacity(TABLE_LEN);
        let mut e = Vec::with_capacity(TABLE_LEN);
        let mut eg = Vec::with_capacity(TABLE_LEN);
        for row in rows {
            let row = row?;
            lp.push(row[0]);
            e.push(row[1]);
            eg.push(row[2]);
        }
        Ok(ModeCoeffs { s0, lp, e, eg })
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }

    fn shoot(&self, m: u32, parity: Parity, alpha: f64, fine: bool) -> Result<Vec<[f64; 2]>> {
        let n = if fine { N_FINE } else { N_COARSE };
        let stride = if fine { 1 } else { 2 };
        let h = self.s0 / n as f64;
        let y0 = match parity {
            Parity::Even => [1.0, 0.0],
            Parity::Odd => [0.0, 1.0],
        };
        let m2 = (m as f64) * (m as f64);
        rk4_integrate(n, h, y0, |idx, y| {
            let k = idx * stride;
            [
                y[1],
                -self.lp[k] * y[1] + (m2 * self.eg[k] - alpha * self.e[k]) * y[0],
            ]
        })
    }

    /// Boundary value of the mode at the clamped sweep: `w(s0; lambda)`,
    /// scaled by the trajectory maximum so sweeps are comparable across
    /// lambda.
    fn clamped_residual(&self, m: u32, parity: Parity, lambda: f64, fine: bool) -> Result<f64> {
        let traj = self.shoot(m, parity, lambda, fine)?;
        let scale = traj
            .iter()
            .map(|y| y[0].abs())
            .fold(f64::MIN_POSITIVE, f64::max);
        Ok(traj.last().unwrap()[0] / scale)
    }
}

/// One radial mode: its eigenvalue, step-halving defect, and the fine
/// trajectory `(w, w')` on `[0, s0]`.
pub struct ModeSolution {
    pub m: u32,
    pub parity: Parity,
    pub sigma: f64,
    pub defect: f64,
    pub w: Vec<[f64; 2]>,
    pub h: f64,
}

pub fn mode_solution(
    coeffs: &ModeCoeffs,
    m: u32,
    parity: Parity,
    alpha: f64,
) -> Result<ModeSolution> {
    let fine = coeffs.shoot(m, parity, alpha, true)?;
    let coarse = coeffs.shoot(m, parity, alpha, false)?;
    let rate = |traj: &[[f64; 2]]| -> Result<f64> {
        let end = traj.last().unwrap();
        let scale = traj.iter().map(|y| y[0].abs()).fold(0.0f64, f64::max);
        if end[0].abs() <= 1e-9 * scale {
            return Err(Error::numeric(format!(
                "mode (m = {m}, {parity:?}) vanishes on the boundary at alpha = {alpha}; \
                 the rate is unbounded there"
            )));
        }
        Ok(end[1] / (coeffs.e[TABLE_LEN - 1].sqrt() * end[0]))
    };
    let sigma_fine = rate(&fine)?;
    let sigma_coarse = rate(&coarse)?;
    let defect = (sigma_fine - sigma_coarse).abs() / sigma_fine.abs().max(1.0);
    if defect > ODE_FAIL_TOL {
        return Err(Error::numeric(format!(
            "step-halving defect {defect:.3e} for mode (m = {m}, {parity:?}) \
             exceeds {ODE_FAIL_TOL:.0e}"
        )));
    }
    // fourth-order step-halving extrapolation
    let sigma = sigma_fine + (sigma_fine - sigma_coarse) / 15.0;
    Ok(ModeSolution {
        m,
        parity,
        sigma,
        defect,
        h: coeffs.s0 / N_FINE as f64,
        w: fine,
    })
}

/// One line of the assembled spectrum.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectrumEntry {
    pub m: u32,
    pub parity: Parity,
    pub sigma: f64,
    pub multiplicity: u32,
    pub defect: f64,
}

/// Entries whose eigenvalues coincide within the clustering tolerance.
#[derive(Clone, Debug, Serialize)]
pub struct EigenCluster {
    pub sigma: f64,
    pub multiplicity: u32,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub alpha: f64,
    pub entries: Vec<SpectrumEntry>,
    pub clusters: Vec<EigenCluster>,
}

impl Spectrum {
    pub fn total_multiplicity(&self) -> u32 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }
}

/// Assemble the boundary spectrum for all angular indices up to `m_max`
/// (at least 2, so the degenerate level and its successor are both visible).
pub fn spectrum(
    family: &AnnulusFamily,
    s0: f64,
    alpha: f64,
    m_max: u32,
    tol: &ToleranceConfig,
) -> Result<Spectrum> {
    tol.validate()?;
    if m_max < 2 {
        return Err(Error::ParamRange(format!(
            "angular ceiling {m_max} too small to expose the structure; need at least 2"
        )));
    }
    let coeffs = ModeCoeffs::build(family, s0)?;
    let specs: Vec<(u32, Parity)> = (0..=m_max)
        .flat_map(|m| [(m, Parity::Even), (m, Parity::Odd)])
        .collect();
    let solved = parallel_map(specs.len(), |i| {
        let (m, parity) = specs[i];
        mode_solution(&coeffs, m, parity, alpha).map(|s| (s.sigma, s.defect))
    });
    let mut entries = Vec::with_capacity(specs.len());
    for (i, sol) in solved.into_iter().enumerate() {
        let (sigma, defect) = sol?;
        let (m, parity) = specs[i];
        entries.push(SpectrumEntry {
            m,
            parity,
            sigma,
            multiplicity: if m == 0 { 1 } else { 2 },
            defect,
        });
    }
    entries.sort_by(|x, y| x.sigma.total_cmp(&y.sigma));
    let clusters = cluster_entries(&entries, tol.cluster_rel_tol);
    Ok(Spectrum {
        alpha,
        entries,
        clusters,
    })
}

fn cluster_entries(entries: &[SpectrumEntry], rel_tol: f64) -> Vec<EigenCluster> {
    let mut clusters: Vec<EigenCluster> = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let fresh = match clusters.last() {
            None => true,
            Some(c) => (e.sigma - c.sigma).abs() > rel_tol * c.sigma.abs().max(1.0),
        };
        if fresh {
            clusters.push(EigenCluster {
                sigma: e.sigma,
                multiplicity: 0,
                members: Vec::new(),
            });
        }
        let c = clusters.last_mut().unwrap();
        // running multiplicity-weighted mean as the representative
        let w_old = c.multiplicity as f64;
        let w_new = e.multiplicity as f64;
        c.sigma = (c.sigma * w_old + e.sigma * w_new) / (w_old + w_new);
        c.multiplicity += e.multiplicity;
        c.members.push(i);
    }
    clusters
}

/// Group an ascending list of plain values by relative closeness; returns
/// `(mean, count)` pairs. Shared by the finite-difference cross-check.
pub fn cluster_values(sorted: &[f64], rel_tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in sorted {
        match out.last_mut() {
            Some((mean, count)) if (v - *mean).abs() <= rel_tol * mean.abs().max(1.0) => {
                *mean = (*mean * (*count as f64) + v) / ((*count + 1) as f64);
                *count += 1;
            }
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Smallest clamped (both circles pinned) eigenvalue over angular indices up
/// to `m_ceiling`. Each candidate is located on the coarse grid, re-located
/// on the fine grid, and the two must agree.
pub fn clamped_min(coeffs: &ModeCoeffs, m_ceiling: u32) -> Result<f64> {
    let specs: Vec<(u32, Parity)> = (0..=m_ceiling)
        .flat_map(|m| [(m, Parity::Even), (m, Parity::Odd)])
        .collect();
    let roots = parallel_map(specs.len(), |i| {
        let (m, parity) = specs[i];
        first_clamped_root(coeffs, m, parity)
    });
    let mut min = f64::INFINITY;
    for r in roots {
        if let Some(v) = r? {
            min = min.min(v);
        }
    }
    if min.is_finite() {
        Ok(min)
    } else {
        Err(Error::numeric(format!(
            "no clamped eigenvalue in [{DIRICHLET_SWEEP_LO}, {DIRICHLET_SWEEP_HI}]"
        )))
    }
}

fn first_clamped_root(coeffs: &ModeCoeffs, m: u32, parity: Parity) -> Result<Option<f64>> {
    let locate = |fine: bool| -> Result<Option<f64>> {
        let mut prev_l = DIRICHLET_SWEEP_LO;
        let mut prev_d = coeffs.clamped_residual(m, parity, prev_l, fine)?;
        let steps = ((DIRICHLET_SWEEP_HI - DIRICHLET_SWEEP_LO) / DIRICHLET_SWEEP_STEP) as usize;
        for k in 1..=steps {
            let l = DIRICHLET_SWEEP_LO + DIRICHLET_SWEEP_STEP * k as f64;
            let d = coeffs.clamped_residual(m, parity, l, fine)?;
            if prev_d == 0.0 || prev_d * d < 0.0 {
                let mut inner = None;
                let root = brent(
                    |x| match coeffs.clamped_residual(m, parity, x, fine) {
                        Ok(v) => v,
                        Err(e) => {
                            inner = Some(e);
                            f64::NAN
                        }
                    },
                    prev_l,
                    l,
                    1e-11,
                );
                if let Some(e) = inner {
                    return Err(e);
                }
                return Ok(Some(root?));
            }
            prev_l = l;
            prev_d = d;
        }
        Ok(None)
    };
    let coarse = locate(false)?;
    let fine = locate(true)?;
    match (coarse, fine) {
        (None, None) => Ok(None),
        (Some(c), Some(f)) if (c - f).abs() <= 1e-6 * f.abs().max(1.0) => Ok(Some(f)),
        _ => Err(Error::numeric(format!(
            "clamped sweep for (m = {m}, {parity:?}) unstable under step halving"
        ))),
    }
}

/// Variational quotient of a shot mode: bulk energy at the frequency over
/// boundary mass. Equals the shooting rate for a true mode, so the gap
/// between the two is an independent consistency gauge.
pub fn rayleigh_sigma(coeffs: &ModeCoeffs, sol: &ModeSolution, alpha: f64) -> f64 {
    let n = sol.w.len() - 1;
    let m2 = (sol.m as f64) * (sol.m as f64);
    let mut num = 0.0;
    for k in 0..=n {
        let e = coeffs.e[2 * k];
        let g = e / coeffs.eg[2 * k];
        let w = sol.w[k][0];
        let dw = sol.w[k][1];
        let val = (dw * dw / e + (m2 / g - alpha) * w * w) * (e * g).sqrt();
        let weight = if k == 0 || k == n { 0.5 } else { 1.0 };
        num += weight * val;
    }
    num *= sol.h;
    let e_end = coeffs.e[TABLE_LEN - 1];
    let g_end = e_end / coeffs.eg[TABLE_LEN - 1];
    let w_end = sol.w[n][0];
    num / (w_end * w_end * g_end.sqrt())
}

/// Best-scale gap between a shot radial profile and a closed-form target,
/// relative to the target's size.
pub fn profile_match(
    sol: &ModeSolution,
    mut target: impl FnMut(f64) -> Result<f64>,
) -> Result<f64> {
    let n = sol.w.len() - 1;
    let mut cross = 0.0;
    let mut tt = 0.0;
    let mut targets = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let tv = target(sol.h * k as f64)?;
        cross += sol.w[k][0] * tv;
        tt += tv * tv;
        targets.push(tv);
    }
    if tt == 0.0 {
        return Err(Error::DegenerateField("profile target vanishes identically".into()));
    }
    let c = cross / tt;
    let scale = targets.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut dev = 0.0f64;
    for k in 0..=n {
        dev = dev.max((sol.w[k][0] - c * targets[k]).abs());
    }
    Ok(dev / scale.max(f64::MIN_POSITIVE))
}
