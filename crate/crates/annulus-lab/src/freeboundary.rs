//! Locating and certifying the meridian width at which a band meets a
//! geodesic sphere about the pole orthogonally.
//!
//! At a meridian point (`theta = 0`) the tangent space of the model that is
//! both orthogonal to the position and free of the last rotation coordinate
//! is spanned by an orthonormal pair: the radial direction `V` (velocity of
//! the geodesic from the pole) and a sphere-tangential direction `U`. The
//! meridian velocity `T` lives in that plane, so `T = cos(phi) V +
//! sin(phi) U` exactly, and the boundary sphere is met orthogonally where
//! the signed component `q = <T, U>` vanishes with `<T, V> = +1`. The solver
//! brackets roots of `q`, which changes sign, rather than of the residual
//! `1 - <T, V>`, which touches zero quadratically and cannot be bracketed.

use crate::error::{Error, Result};
use crate::numerics::brent;
use crate::rotational::{AnnulusFamily, AnnulusFamilyParams};
use crate::spaceform::{metric_inner, AmbientPoint, AmbientVector, SpaceFormSign};
use crate::tol::{BC_RESIDUAL_TOL, CONTAINMENT_TOL, ORTHO_CERT_TOL, ToleranceConfig};
use serde::{Deserialize, Serialize};

/// Scan resolution when bracketing roots of the signed tangency.
const TANGENCY_SCAN: usize = 400;

/// Meridian samples for containment / monotonicity / star-shape checks.
const CERT_SAMPLES: usize = 513;

/// Boundary circle samples for the coordinate-rate residuals.
const BC_THETA_SAMPLES: usize = 32;

/// Grid density when scanning the band parameter for a target radius.
const RADIUS_SCAN: usize = 60;

/// Boundary rate of the pole coordinate: the restriction of the ambient
/// functional dual to the pole satisfies `d_nu phi = sigma phi` on a
/// boundary sphere of radius `r` with this `sigma`. It is the lowest
/// eigenvalue level of the boundary spectrum and is negative on the
/// spherical model, positive on the hyperbolic one.
pub fn pole_coordinate_rate(eps: SpaceFormSign, r: f64) -> Result<f64> {
    Ok(-eps.eps() * eps.tan(r)?)
}

/// Boundary rate shared by the three span coordinates; always positive and
/// equal to the second eigenvalue level of the boundary spectrum.
pub fn span_coordinate_rate(eps: SpaceFormSign, r: f64) -> Result<f64> {
    eps.cot(r)
}

/// Orthonormal pair `(V, U)` at a point away from the pole and the rotation
/// axis: `V` is the unit radial direction (velocity of the geodesic from the
/// pole), `U` is tangent to the geodesic sphere through the point and has no
/// component along the pole axis or the last rotation coordinate. On the
/// meridian `theta = 0` these two span the plane containing the meridian
/// velocity.
pub fn sphere_frame(p: &AmbientPoint) -> Result<(AmbientVector, AmbientVector)> {
    let eps = p.eps();
    let v = p.vector();
    let n = v.y_norm();
    let m = (v.y[0] * v.y[0] + v.y[1] * v.y[1]).sqrt();
    if n < 1e-12 || m < 1e-12 {
        return Err(Error::domain(
            "sphere frame undefined at the pole or on the rotation axis",
        ));
    }
    let radial = AmbientVector::new(
        -eps.eps() * n,
        [v.x * v.y[0] / n, v.x * v.y[1] / n, v.x * v.y[2] / n],
    );
    let tangential = AmbientVector::new(0.0, [-v.y[1] / m, v.y[0] / m, 0.0]);
    Ok((radial, tangential))
}

/// Signed sphere-tangential component of the unit meridian velocity at
/// `theta = 0`. Vanishes exactly where the band crosses the concentric
/// spheres radially; changes sign there, so it brackets.
pub fn signed_tangency(family: &AnnulusFamily, s: f64) -> Result<f64> {
    let eps = family.params().eps();
    let point = family.immerse(s, 0.0)?;
    let t = family.d_s(s, 0.0)?;
    let (_, u) = sphere_frame(&point)?;
    let norm = metric_inner(eps, &t, &t).sqrt();
    Ok(metric_inner(eps, &t, &u) / norm)
}

/// `1 - <T, V>` for the unit meridian velocity; zero exactly at an outward
/// orthogonal sphere crossing and nonnegative up to rounding everywhere.
pub fn orthogonality_residual(family: &AnnulusFamily, s: f64) -> Result<f64> {
    outward_orthogonality(family, s, 1.0)
}

/// Same residual with the outward conormal chosen by `sgn` (+1 at the right
/// end of the band, -1 at the left).
fn outward_orthogonality(family: &AnnulusFamily, s: f64, sgn: f64) -> Result<f64> {
    let eps = family.params().eps();
    let point = family.immerse(s, 0.0)?;
    let t = family.d_s(s, 0.0)?;
    let (v, _) = sphere_frame(&point)?;
    let norm = metric_inner(eps, &t, &t).sqrt();
    Ok(1.0 - sgn * metric_inner(eps, &t, &v) / norm)
}

fn solve_s0(family: &AnnulusFamily, root_tol: f64) -> Result<f64> {
    let hi = family.span() * (1.0 - 1e-9);
    let mut prev_s = 0.0;
    let mut prev_q = signed_tangency(family, 0.0)?;
    for k in 1..TANGENCY_SCAN {
        let s = hi * (k as f64) / ((TANGENCY_SCAN - 1) as f64);
        let q = signed_tangency(family, s)?;
        if prev_q == 0.0 || prev_q * q < 0.0 {
            let mut inner_err = None;
            let root = brent(
                |x| match signed_tangency(family, x) {
                    Ok(v) => v,
                    Err(e) => {
                        inner_err = Some(e);
                        f64::NAN
                    }
                },
                prev_s,
                s,
                root_tol,
            );
            if let Some(e) = inner_err {
                return Err(e);
            }
            let root = root?;
            if orthogonality_residual(family, root)? <= ORTHO_CERT_TOL {
                return Ok(root);
            }
            // sign change with an inward conormal; keep scanning outward
        }
        prev_s = s;
        prev_q = q;
    }
    Err(Error::NoFreeBoundary(format!(
        "no outward radial crossing on (0, {hi:.6}) for a = {}, eps = {:+}",
        family.params().a(),
        family.params().eps().eps() as i8
    )))
}

/// Certificate data gathered along the whole band `|s| <= s0`.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryCertificate {
    /// Worst `1 - <T_out, V>` over the two boundary circles.
    pub orthogonality: f64,
    /// Worst pole-coordinate boundary-rate residual over both circles.
    pub bc_pole: f64,
    /// Worst span-coordinate boundary-rate residual over both circles.
    pub bc_span: f64,
    /// `max r(s) - r(s0)`; nonpositive up to rounding when the band sits
    /// inside the ball bounded by its own boundary sphere.
    pub containment: f64,
    /// Pole distance nondecreasing in `|s|` along the meridian.
    pub radial_monotone: bool,
    /// Meridian polar angle about the pole strictly monotone, so every ray
    /// from the pole meets the band at most once.
    pub star_shaped: bool,
    pub min_pole_distance: f64,
    /// Spherical model only: `pi/2 - psi(s0)`, positive while the band stays
    /// in the open hemisphere.
    pub hemisphere_margin: Option<f64>,
}

pub fn boundary_certificate(
    family: &AnnulusFamily,
    s0: f64,
    samples: usize,
) -> Result<BoundaryCertificate> {
    if !(s0 > 0.0 && s0 < family.span()) {
        return Err(Error::domain(format!(
            "boundary width {s0} outside (0, {})",
            family.span()
        )));
    }
    let n = samples.max(9);
    let r_b = family.pole_distance_at(s0)?;
    let orthogonality = outward_orthogonality(family, s0, 1.0)?
        .max(outward_orthogonality(family, -s0, -1.0)?);
    let (bc_pole, bc_span) = boundary_rate_residuals(family, s0, r_b)?;

    let mut containment = f64::NEG_INFINITY;
    let mut min_r = f64::INFINITY;
    let mut radial_monotone = true;
    let mut star_shaped = true;
    let mut prev_r = 0.0;
    let mut prev_beta = 0.0;
    for k in 0..n {
        let s = -s0 + 2.0 * s0 * (k as f64) / ((n - 1) as f64);
        let p = family.immerse(s, 0.0)?;
        let r = p.pole_distance()?;
        let beta = p.vector().y[1].atan2(p.vector().y[0]);
        containment = containment.max(r - r_b);
        min_r = min_r.min(r);
        if k > 0 {
            // the polar angle sweeps monotonically from the left circle
            // to the right one; the pole distance dips to the waist and
            // climbs back out
            if beta >= prev_beta {
                star_shaped = false;
            }
            let mid = (n - 1) as f64 / 2.0;
            let going_out = (k as f64) > mid;
            if going_out && r < prev_r - 1e-12 {
                radial_monotone = false;
            }
            if !going_out && r > prev_r + 1e-12 {
                radial_monotone = false;
            }
        }
        prev_r = r;
        prev_beta = beta;
    }

    let hemisphere_margin = match family.params().eps() {
        SpaceFormSign::Spherical => {
            Some(std::f64::consts::FRAC_PI_2 - family.psi(s0)?)
        }
        SpaceFormSign::Hyperbolic => None,
    };

    Ok(BoundaryCertificate {
        orthogonality,
        bc_pole,
        bc_span,
        containment,
        radial_monotone,
        star_shaped,
        min_pole_distance: min_r,
        hemisphere_margin,
    })
}

/// Residuals of `d_nu phi = sigma phi` on both boundary circles for the four
/// ambient coordinate functions, with the two closed-form rates.
fn boundary_rate_residuals(family: &AnnulusFamily, s0: f64, r: f64) -> Result<(f64, f64)> {
    let eps = family.params().eps();
    let sigma0 = pole_coordinate_rate(eps, r)?;
    let sigma1 = span_coordinate_rate(eps, r)?;
    let mut bc_pole = 0.0f64;
    let mut bc_span = 0.0f64;
    for &(end, sgn) in &[(s0, 1.0), (-s0, -1.0)] {
        for k in 0..BC_THETA_SAMPLES {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (BC_THETA_SAMPLES as f64);
            let p = family.immerse(end, theta)?;
            let t = family.d_s(end, theta)?;
            let norm = metric_inner(eps, &t, &t).sqrt();
            let nu = t.scale(sgn / norm);
            bc_pole = bc_pole.max((nu.x - sigma0 * p.vector().x).abs());
            for i in 0..3 {
                bc_span = bc_span.max((nu.y[i] - sigma1 * p.vector().y[i]).abs());
            }
        }
    }
    Ok((bc_pole, bc_span))
}

/// Scalar residuals retained with a solved configuration.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BoundaryResiduals {
    pub bc_pole: f64,
    pub bc_span: f64,
    pub containment: f64,
    pub orthogonality: f64,
}

/// A band together with its certified boundary width and radius.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct FreeBoundaryConfig {
    pub params: AnnulusFamilyParams,
    pub r: f64,
    pub residuals: BoundaryResiduals,
    pub s0: f64,
}

impl FreeBoundaryConfig {
    /// Full pipeline: build the band, bracket the outward radial crossing,
    /// and certify orthogonality, containment and boundary rates.
    pub fn solve(params: AnnulusFamilyParams, tol: &ToleranceConfig) -> Result<Self> {
        tol.validate()?;
        let family = AnnulusFamily::new(params)?;
        let s0 = solve_s0(&family, tol.root_tol)?;
        let cfg = FreeBoundaryConfig::from_width(&family, params, s0)?;
        let eps_label = params.eps().eps() as i8;
        if cfg.residuals.orthogonality > ORTHO_CERT_TOL {
            return Err(Error::NoFreeBoundary(format!(
                "crossing at s0 = {s0:.9} failed certification (residual {:.3e}, eps {eps_label:+})",
                cfg.residuals.orthogonality
            )));
        }
        Ok(cfg)
    }

    /// Uncertified configuration at a prescribed width: residuals are
    /// computed and reported but not required to be small. This is the
    /// entry point for re-checking stored or tampered data.
    pub fn at_s0(params: AnnulusFamilyParams, s0: f64) -> Result<Self> {
        let family = AnnulusFamily::new(params)?;
        if !(s0 > 0.0 && s0 < family.span()) {
            return Err(Error::domain(format!(
                "width {s0} outside the band's span (0, {})",
                family.span()
            )));
        }
        FreeBoundaryConfig::from_width(&family, params, s0)
    }

    fn from_width(family: &AnnulusFamily, params: AnnulusFamilyParams, s0: f64) -> Result<Self> {
        let cert = boundary_certificate(family, s0, CERT_SAMPLES)?;
        Ok(FreeBoundaryConfig {
            params,
            r: family.pole_distance_at(s0)?,
            residuals: BoundaryResiduals {
                bc_pole: cert.bc_pole,
                bc_span: cert.bc_span,
                containment: cert.containment,
                orthogonality: cert.orthogonality,
            },
            s0,
        })
    }

    pub fn build_family(&self) -> Result<AnnulusFamily> {
        AnnulusFamily::new(self.params)
    }

    /// Re-derive everything from the stored parameters and compare against
    /// the stored values. Never panics and never hides a defect inside an
    /// error: any recomputation failure is itself a failed verification.
    pub fn verify(&self) -> VerifyReport {
        let recomputed = match FreeBoundaryConfig::at_s0(self.params, self.s0) {
            Ok(c) => c,
            Err(e) => {
                return VerifyReport {
                    passed: false,
                    orthogonality_ok: false,
                    radius_ok: false,
                    boundary_condition_ok: false,
                    containment_ok: false,
                    residuals_consistent: false,
                    failure: Some(format!("recomputation failed: {e}")),
                    recomputed: None,
                }
            }
        };
        let rr = &recomputed.residuals;
        let orthogonality_ok = rr.orthogonality <= ORTHO_CERT_TOL;
        let radius_ok = (recomputed.r - self.r).abs() <= 1e-9 * self.r.abs().max(1.0);
        let boundary_condition_ok = rr.bc_pole <= BC_RESIDUAL_TOL && rr.bc_span <= BC_RESIDUAL_TOL;
        let containment_ok = rr.containment <= CONTAINMENT_TOL;
        let stored = &self.residuals;
        let residuals_consistent = (stored.bc_pole - rr.bc_pole).abs() <= 1e-8
            && (stored.bc_span - rr.bc_span).abs() <= 1e-8
            && (stored.containment - rr.containment).abs() <= 1e-8
            && (stored.orthogonality - rr.orthogonality).abs() <= 1e-8;
        let passed = orthogonality_ok
            && radius_ok
            && boundary_condition_ok
            && containment_ok
            && residuals_consistent;
        VerifyReport {
            passed,
            orthogonality_ok,
            radius_ok,
            boundary_condition_ok,
            containment_ok,
            residuals_consistent,
            failure: None,
            recomputed: Some(recomputed),
        }
    }
}

/// Outcome of re-deriving a stored configuration.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub orthogonality_ok: bool,
    pub radius_ok: bool,
    pub boundary_condition_ok: bool,
    pub containment_ok: bool,
    pub residuals_consistent: bool,
    pub failure: Option<String>,
    pub recomputed: Option<FreeBoundaryConfig>,
}

/// Find the band whose boundary sphere has the prescribed radius by
/// scanning the parameter window and bisecting the bracket that straddles
/// the target.
pub fn solve_for_radius(
    eps: SpaceFormSign,
    r_target: f64,
    tol: &ToleranceConfig,
) -> Result<FreeBoundaryConfig> {
    if !(r_target.is_finite() && r_target > 0.0) {
        return Err(Error::UnachievableRadius(format!(
            "target radius {r_target} is not a positive finite number"
        )));
    }
    if eps == SpaceFormSign::Spherical && r_target >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::UnachievableRadius(format!(
            "target radius {r_target} reaches the equator of the spherical model"
        )));
    }
    let grid: Vec<f64> = (0..RADIUS_SCAN)
        .map(|k| {
            let t = (k as f64) / ((RADIUS_SCAN - 1) as f64);
            match eps {
                // linear sweep across (-1, 0)
                SpaceFormSign::Spherical => -0.999 + 0.998 * t,
                // logarithmic sweep across (1, 64]
                SpaceFormSign::Hyperbolic => 1.0 + 10f64.powf(-3.0 + 4.8 * t),
            }
        })
        .collect();

    let radius_at = |a: f64| -> Option<(f64, FreeBoundaryConfig)> {
        let params = AnnulusFamilyParams::new(eps, a).ok()?;
        let cfg = FreeBoundaryConfig::solve(params, tol).ok()?;
        Some((cfg.r, cfg))
    };

    let mut solved: Vec<(f64, f64)> = Vec::new(); // (a, r)
    for &a in &grid {
        if let Some((r, _)) = radius_at(a) {
            solved.push((a, r));
        }
    }
    if solved.is_empty() {
        return Err(Error::UnachievableRadius(
            "no band in the parameter window admits a certified boundary".into(),
        ));
    }

    let bracket = solved
        .windows(2)
        .find(|w| (w[0].1 - r_target) * (w[1].1 - r_target) <= 0.0);
    let (mut a_lo, r_lo, mut a_hi) = match bracket {
        Some(w) => (w[0].0, w[0].1, w[1].0),
        None => {
            let r_min = solved.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
            let r_max = solved.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
            return Err(Error::UnachievableRadius(format!(
                "target radius {r_target} outside the achievable window [{r_min:.6}, {r_max:.6}]"
            )));
        }
    };
    let mut lo_below = r_lo <= r_target;

    let mut best: Option<FreeBoundaryConfig> = None;
    for _ in 0..100 {
        let a_mid = 0.5 * (a_lo + a_hi);
        let Some((r_mid, cfg)) = radius_at(a_mid) else {
            return Err(Error::numeric(format!(
                "band at a = {a_mid} lost its boundary during bisection"
            )));
        };
        let mid_below = r_mid <= r_target;
        if mid_below == lo_below {
            a_lo = a_mid;
            lo_below = mid_below;
        } else {
            a_hi = a_mid;
        }
        let done = (r_mid - r_target).abs() <= 1e-10;
        best = Some(cfg);
        if done || (a_hi - a_lo).abs() <= f64::EPSILON * a_lo.abs().max(1.0) {
            break;
        }
    }
    let cfg = best.ok_or_else(|| Error::numeric("radius bisection made no progress"))?;
    if (cfg.r - r_target).abs() > 1e-8 {
        return Err(Error::numeric(format!(
            "radius bisection stalled at r = {} for target {r_target}",
            cfg.r
        )));
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spherical_reference() -> FreeBoundaryConfig {
        let params = AnnulusFamilyParams::new(SpaceFormSign::Spherical, -0.5).unwrap();
        FreeBoundaryConfig::solve(params, &ToleranceConfig::default()).unwrap()
    }

    fn hyperbolic_reference() -> FreeBoundaryConfig {
        let params = AnnulusFamilyParams::new(SpaceFormSign::Hyperbolic, 2.0).unwrap();
        FreeBoundaryConfig::solve(params, &ToleranceConfig::default()).unwrap()
    }

    #[test]
    fn spherical_reference_band_width_and_radius() {
        let cfg = spherical_reference();
        assert!((cfg.s0 - 0.76996769).abs() < 2e-6, "s0 = {}", cfg.s0);
        assert!((cfg.r - 1.10109272).abs() < 2e-6, "r = {}", cfg.r);
        assert!(cfg.residuals.orthogonality <= 1e-10);
        assert!(cfg.residuals.bc_pole <= 1e-8);
        assert!(cfg.residuals.bc_span <= 1e-8);
        assert!(cfg.residuals.containment <= 1e-10);
    }

    #[test]
    fn hyperbolic_reference_band_width_and_radius() {
        let cfg = hyperbolic_reference();
        assert!((cfg.s0 - 1.02674572).abs() < 2e-6, "s0 = {}", cfg.s0);
        assert!((cfg.r - 1.48841493).abs() < 2e-6, "r = {}", cfg.r);
        assert!(cfg.residuals.orthogonality <= 1e-10);
        assert!(cfg.residuals.bc_pole <= 1e-8);
        assert!(cfg.residuals.bc_span <= 1e-8);
    }

    #[test]
    fn signed_tangency_brackets_the_crossing() {
        for cfg in [spherical_reference(), hyperbolic_reference()] {
            let family = cfg.build_family().unwrap();
            let before = signed_tangency(&family, cfg.s0 - 1e-3).unwrap();
            let after = signed_tangency(&family, cfg.s0 + 1e-3).unwrap();
            assert!(before * after < 0.0, "no sign change around s0");
            assert!(signed_tangency(&family, 0.0).unwrap() < 0.0);
        }
    }

    #[test]
    fn orthogonality_residual_is_one_sided() {
        for cfg in [spherical_reference(), hyperbolic_reference()] {
            let family = cfg.build_family().unwrap();
            for k in 0..50 {
                let s = family.span() * 0.98 * (k as f64) / 49.0;
                let resid = orthogonality_residual(&family, s).unwrap();
                assert!(resid >= -1e-12, "residual went negative at s = {s}");
            }
        }
    }

    #[test]
    fn certificate_on_reference_bands() {
        for cfg in [spherical_reference(), hyperbolic_reference()] {
            let family = cfg.build_family().unwrap();
            let cert = boundary_certificate(&family, cfg.s0, 513).unwrap();
            assert!(cert.radial_monotone);
            assert!(cert.star_shaped);
            assert!(cert.containment <= 1e-10);
            assert!(cert.min_pole_distance > 0.3);
            match family.params().eps() {
                SpaceFormSign::Spherical => {
                    assert!(cert.hemisphere_margin.unwrap() > 0.1);
                }
                SpaceFormSign::Hyperbolic => assert!(cert.hemisphere_margin.is_none()),
            }
        }
    }

    #[test]
    fn wrong_width_fails_loudly() {
        let cfg = spherical_reference();
        // The tangency misfit grows quadratically in the width offset, so a
        // 0.05 displacement lands around 1e-3; anything far above the 1e-10
        // certification tolerance counts as loud.
        let off = FreeBoundaryConfig::at_s0(cfg.params, cfg.s0 + 0.05).unwrap();
        assert!(
            off.residuals.orthogonality > 1e-4,
            "orthogonality {}",
            off.residuals.orthogonality
        );
        let mut tampered = cfg;
        tampered.s0 += 0.05;
        let report = tampered.verify();
        assert!(!report.passed);
        assert!(!report.orthogonality_ok);
        let beyond = FreeBoundaryConfig { s0: 99.0, ..cfg };
        let report = beyond.verify();
        assert!(!report.passed);
        assert!(report.failure.is_some());
    }

    #[test]
    fn verification_round_trip() {
        for cfg in [spherical_reference(), hyperbolic_reference()] {
            let report = cfg.verify();
            assert!(report.passed, "{report:?}");
            let text = serde_json::to_string(&cfg).unwrap();
            let back: FreeBoundaryConfig = serde_json::from_str(&text).unwrap();
            assert!(back.verify().passed);
            let mut wrong_radius = cfg;
            wrong_radius.r += 1e-3;
            let report = wrong_radius.verify();
            assert!(!report.passed);
            assert!(!report.radius_ok);
            assert!(report.orthogonality_ok);
        }
    }

    #[test]
    fn radius_solve_round_trips_the_references() {
        let tol = ToleranceConfig::default();
        let s = spherical_reference();
        let cfg = solve_for_radius(SpaceFormSign::Spherical, s.r, &tol).unwrap();
        assert!((cfg.params.a() + 0.5).abs() < 1e-4, "a = {}", cfg.params.a());
        assert!((cfg.r - s.r).abs() <= 1e-8);
        let h = hyperbolic_reference();
        let cfg = solve_for_radius(SpaceFormSign::Hyperbolic, h.r, &tol).unwrap();
        assert!((cfg.params.a() - 2.0).abs() < 1e-4, "a = {}", cfg.params.a());
        assert!((cfg.r - h.r).abs() <= 1e-8);
    }

    #[test]
    fn impossible_radii_are_rejected() {
        let tol = ToleranceConfig::default();
        let err = solve_for_radius(SpaceFormSign::Spherical, 1.6, &tol).unwrap_err();
        assert!(matches!(err, Error::UnachievableRadius(_)));
        let err = solve_for_radius(SpaceFormSign::Hyperbolic, 1e-9, &tol).unwrap_err();
        assert!(matches!(err, Error::UnachievableRadius(_)));
        let err = solve_for_radius(SpaceFormSign::Hyperbolic, -1.0, &tol).unwrap_err();
        assert!(matches!(err, Error::UnachievableRadius(_)));
    }
}
