//! Central tolerance bank.
//!
//! Every "how close is close enough" constant used by the library lives here,
//! so the implementation and the test suites cannot drift apart on what zero
//! means.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Absolute tolerance for adaptive quadrature of the twist integrand.
pub const QUAD_ABS_TOL: f64 = 1e-12;
/// Maximum bisection depth of the adaptive quadrature before giving up.
pub const QUAD_MAX_DEPTH: u32 = 60;
/// Target relative agreement between an RK4 run and its half-step check.
pub const ODE_REL_TOL: f64 = 1e-8;
/// Hard failure threshold for the half-step disagreement.
pub const ODE_FAIL_TOL: f64 = 1e-5;
/// Absolute x-tolerance for Brent root refinement.
pub const ROOT_TOL: f64 = 1e-12;
/// Off-diagonal threshold at which the Jacobi eigensolver declares victory.
pub const EIG_TOL: f64 = 1e-10;
/// Relative gap under which two radial eigenvalues merge into one cluster.
pub const CLUSTER_REL_TOL: f64 = 1e-7;

/// Admissible violation of the ambient quadric constraint x^2 + eps*|y|^2 = 1.
pub const CONSTRAINT_TOL: f64 = 1e-10;
/// Step for the centered differences applied to analytic first derivatives.
pub const FD_STEP: f64 = 1e-5;
/// Orthogonality certificate required of an accepted free-boundary root.
pub const ORTHO_CERT_TOL: f64 = 1e-10;
/// Allowed protrusion of the annulus beyond its boundary sphere.
pub const CONTAINMENT_TOL: f64 = 1e-10;
/// Residual allowed in the coordinate-function boundary conditions.
pub const BC_RESIDUAL_TOL: f64 = 1e-6;
/// Relative width of the "numerically zero" band in nodal sign maps.
pub const ZERO_BAND_REL: f64 = 1e-9;
/// Relative defect under which a sampled field counts as symmetry-pure.
pub const A_PARITY_TOL: f64 = 1e-8;
/// Radial solutions whose boundary value falls below this (relative to the
/// trajectory sup) indicate the frequency sits on the Dirichlet spectrum.
pub const DIRICHLET_GUARD: f64 = 1e-10;
/// Minimum pivot-to-scale ratio accepted by the banded interior solver.
pub const PIVOT_RATIO_MIN: f64 = 1e-12;

/// Runtime-adjustable subset of the tolerance bank.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub quad_abs_tol: f64,
    pub ode_rel_tol: f64,
    pub root_tol: f64,
    pub eig_tol: f64,
    pub cluster_rel_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            quad_abs_tol: QUAD_ABS_TOL,
            ode_rel_tol: ODE_REL_TOL,
            root_tol: ROOT_TOL,
            eig_tol: EIG_TOL,
            cluster_rel_tol: CLUSTER_REL_TOL,
        }
    }
}

impl ToleranceConfig {
    /// All entries must be strictly positive and small enough to mean anything.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("quad_abs_tol", self.quad_abs_tol),
            ("ode_rel_tol", self.ode_rel_tol),
            ("root_tol", self.root_tol),
            ("eig_tol", self.eig_tol),
            ("cluster_rel_tol", self.cluster_rel_tol),
        ] {
            if !(v > 0.0) || !(v < 1.0) {
                return Err(Error::Config(format!(
                    "tolerance {name} must lie in (0, 1), got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_validates() {
        ToleranceConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_nonpositive_and_nan() {
        let mut t = ToleranceConfig::default();
        t.root_tol = 0.0;
        assert!(t.validate().is_err());
        t.root_tol = f64::NAN;
        assert!(t.validate().is_err());
        t.root_tol = 2.0;
        assert!(t.validate().is_err());
    }
}
