//! The one-parameter family of rotationally invariant minimal annuli.
//!
//! Each member is an immersed band
//!
//! ```text
//! Phi(s, theta) = ( f(s) cos_eps psi(s),  f(s) sin_eps psi(s),
//!                   g(s) cos theta,       g(s) sin theta )
//! ```
//!
//! with profile functions
//!
//! ```text
//! f^2 = (1 - eps a cos_eps 2s) / 2,    g^2 = (eps + a cos_eps 2s) / 2,
//! psi' = sqrt(eps (1 - a^2)) / (2 f^2 g),
//! ```
//!
//! where `s` is arc length along the meridian (the induced metric is
//! `ds^2 + g(s)^2 dtheta^2` on the nose) and `theta` is the rotation angle.
//! The parameter window keeping the band immersed and mean-curvature free is
//! `a` in (-1, 0) for the spherical model and `a > 1` for the hyperbolic one.

use crate::error::{Error, Result};
use crate::numerics::{adaptive_simpson, brent, Chebyshev};
use crate::spaceform::{metric_inner, AmbientPoint, AmbientVector, SpaceFormSign};
use crate::tol::{FD_STEP, QUAD_ABS_TOL, ROOT_TOL};
use serde::{Deserialize, Serialize};

/// Polynomial degree of the tabulated meridian turning angle.
const PSI_TABLE_DEGREE: usize = 256;

/// Meridian half-width kept in the table for the hyperbolic model, which has
/// no natural exit; generous compared to every boundary solve we perform.
const HYPERBOLIC_SPAN: f64 = 5.5;

/// Hard ceiling when bracketing the equator exit of the spherical model.
const EXIT_BRACKET_MAX: f64 = 64.0;

/// Band parameter plus curvature sign, validated on construction.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AnnulusFamilyParams {
    eps: SpaceFormSign,
    a: f64,
}

impl AnnulusFamilyParams {
    /// Parameters inside the window where the band can meet a geodesic
    /// sphere orthogonally: `a` in (-1, 0) spherical, `a > 1` hyperbolic.
    pub fn new(eps: SpaceFormSign, a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::ParamRange(format!("band parameter a = {a} is not finite")));
        }
        match eps {
            SpaceFormSign::Spherical if !(a > -1.0 && a < 0.0) => {
                return Err(Error::ParamRange(format!(
                    "spherical band parameter must lie in (-1, 0), got a = {a}"
                )));
            }
            SpaceFormSign::Hyperbolic if !(a > 1.0) => {
                return Err(Error::ParamRange(format!(
                    "hyperbolic band parameter must exceed 1, got a = {a}"
                )));
            }
            _ => {}
        }
        Ok(AnnulusFamilyParams { eps, a })
    }

    /// Parameters restricted only by immersedness of the profiles
    /// (`|a| < 1` spherical, `a > 1` hyperbolic). Bands built from these are
    /// genuine minimal annuli but carry no promise about boundary behaviour;
    /// `a = 0` gives the square band `f = g = 1/sqrt(2)`.
    pub fn raw(eps: SpaceFormSign, a: f64) -> Result<Self> {
        let ok = a.is_finite()
            && match eps {
                SpaceFormSign::Spherical => a.abs() < 1.0,
                SpaceFormSign::Hyperbolic => a > 1.0,
            };
        if !ok {
            return Err(Error::ParamRange(format!(
                "profiles degenerate for eps = {:+}, a = {a}",
                eps.eps() as i8
            )));
        }
        Ok(AnnulusFamilyParams { eps, a })
    }

    pub fn eps(&self) -> SpaceFormSign {
        self.eps
    }

    pub fn a(&self) -> f64 {
        self.a
    }
}

impl<'de> Deserialize<'de> for AnnulusFamilyParams {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Fields {
            eps: SpaceFormSign,
            a: f64,
        }
        let f = Fields::deserialize(de)?;
        AnnulusFamilyParams::new(f.eps, f.a).map_err(serde::de::Error::custom)
    }
}

/// Profile data of one meridian point.
#[derive(Clone, Copy, Debug)]
pub struct Profile {
    pub f: f64,
    pub g: f64,
    pub df: f64,
    pub dg: f64,
    pub psi: f64,
    pub dpsi: f64,
}

/// Coefficients of the induced metric `E ds^2 + G dtheta^2` and their
/// s-derivatives.
#[derive(Clone, Copy, Debug)]
pub struct MetricCoeffs {
    pub e: f64,
    pub g: f64,
    pub de: f64,
    pub dg: f64,
}

/// First-order data of the immersion at one point.
#[derive(Clone, Copy, Debug)]
pub struct SurfaceJet {
    pub point: AmbientPoint,
    pub d_s: AmbientVector,
    pub d_theta: AmbientVector,
    /// Unit normal inside the space form, fixed by a cofactor construction.
    pub normal: AmbientVector,
}

/// One band of the family, with its meridian turning angle tabulated once.
pub struct AnnulusFamily {
    params: AnnulusFamilyParams,
    span: f64,
    psi_table: Chebyshev,
}

impl AnnulusFamily {
    pub fn new(params: AnnulusFamilyParams) -> Result<Self> {
        let span = match params.eps {
            SpaceFormSign::Hyperbolic => HYPERBOLIC_SPAN,
            SpaceFormSign::Spherical => equator_exit(&params)?,
        };
        let psi_table = Chebyshev::fit(0.0, span, PSI_TABLE_DEGREE, |x| {
            turning_angle(&params, x)
        })?;
        Ok(AnnulusFamily {
            params,
            span,
            psi_table,
        })
    }

    pub fn params(&self) -> &AnnulusFamilyParams {
        &self.params
    }

    /// Largest meridian half-width this band supports: the equator exit for
    /// the spherical model, a fixed generous window for the hyperbolic one.
    pub fn span(&self) -> f64 {
        self.span
    }

    /// Turning angle `psi(s)`, odd in `s` exactly (the table is read at
    /// `|s|` and the sign reattached).
    pub fn psi(&self, s: f64) -> Result<f64> {
        let t = s.abs();
        if !(t <= self.span * (1.0 + 1e-12) + 1e-12) {
            return Err(Error::domain(format!(
                "meridian coordinate |s| = {t} outside the tabulated span {}",
                self.span
            )));
        }
        let v = self.psi_table.eval(t.min(self.span));
        Ok(if s < 0.0 { -v } else { v })
    }

    pub fn profile(&self, s: f64) -> Result<Profile> {
        let eps = self.params.eps.eps();
        let a = self.params.a;
        let (s2, c2) = (self.params.eps.sin(2.0 * s), self.params.eps.cos(2.0 * s));
        let f = ((1.0 - eps * a * c2) / 2.0).sqrt();
        let g = ((eps + a * c2) / 2.0).sqrt();
        if !(f > 0.0 && g > 0.0) {
            return Err(Error::Geometry(format!("profile collapses at s = {s}")));
        }
        Ok(Profile {
            f,
            g,
            df: a * s2 / (2.0 * f),
            dg: -eps * a * s2 / (2.0 * g),
            psi: self.psi(s)?,
            dpsi: dpsi(&self.params, s),
        })
    }

    pub fn immerse(&self, s: f64, theta: f64) -> Result<AmbientPoint> {
        let pr = self.profile(s)?;
        let (cp, sp) = (self.params.eps.cos(pr.psi), self.params.eps.sin(pr.psi));
        AmbientPoint::new(
            self.params.eps,
            AmbientVector::new(
                pr.f * cp,
                [pr.f * sp, pr.g * theta.cos(), pr.g * theta.sin()],
            ),
        )
    }

    /// Meridian velocity `d Phi / d s`; unit length since `E = 1`.
    pub fn d_s(&self, s: f64, theta: f64) -> Result<AmbientVector> {
        let eps = self.params.eps.eps();
        let pr = self.profile(s)?;
        let (cp, sp) = (self.params.eps.cos(pr.psi), self.params.eps.sin(pr.psi));
        Ok(AmbientVector::new(
            pr.df * cp - eps * pr.f * pr.dpsi * sp,
            [
                pr.df * sp + pr.f * pr.dpsi * cp,
                pr.dg * theta.cos(),
                pr.dg * theta.sin(),
            ],
        ))
    }

    /// Rotation velocity `d Phi / d theta`, of length `g(s)`.
    pub fn d_theta(&self, s: f64, theta: f64) -> Result<AmbientVector> {
        let pr = self.profile(s)?;
        Ok(AmbientVector::new(
            0.0,
            [0.0, -pr.g * theta.sin(), pr.g * theta.cos()],
        ))
    }

    pub fn jet(&self, s: f64, theta: f64) -> Result<SurfaceJet> {
        let point = self.immerse(s, theta)?;
        let d_s = self.d_s(s, theta)?;
        let d_theta = self.d_theta(s, theta)?;
        let normal = unit_normal(self.params.eps, point.vector(), &d_s, &d_theta)?;
        Ok(SurfaceJet {
            point,
            d_s,
            d_theta,
            normal,
        })
    }

    /// Induced metric coefficients. `e` comes from the closed form
    /// `eps f'^2 + f^2 psi'^2 + g'^2` (identically 1 for these profiles),
    /// `g` is the squared rotation radius; `de` is differenced, `dg` exact.
    pub fn metric_coeffs(&self, s: f64) -> Result<MetricCoeffs> {
        let e_of = |t: f64| -> f64 {
            let eps = self.params.eps.eps();
            let a = self.params.a;
            let (s2, c2) = (self.params.eps.sin(2.0 * t), self.params.eps.cos(2.0 * t));
            let f2 = (1.0 - eps * a * c2) / 2.0;
            let g2 = (eps + a * c2) / 2.0;
            let df = a * s2 / (2.0 * f2.sqrt());
            let dg = -eps * a * s2 / (2.0 * g2.sqrt());
            let dp = dpsi(&self.params, t);
            eps * df * df + f2 * dp * dp + dg * dg
        };
        let pr = self.profile(s)?;
        let h = FD_STEP * s.abs().max(1.0);
        Ok(MetricCoeffs {
            e: e_of(s),
            g: pr.g * pr.g,
            de: (e_of(s + h) - e_of(s - h)) / (2.0 * h),
            dg: -self.params.eps.eps() * self.params.a * self.params.eps.sin(2.0 * s),
        })
    }

    /// Mean curvature of the band inside its space form, evaluated on the
    /// meridian `theta = 0` (rotation invariance makes that no loss). The
    /// second s-derivative is differenced from the analytic velocity, so the
    /// residual floor sits near 1e-10 rather than the 1e-6 a position-level
    /// difference would give.
    pub fn mean_curvature(&self, s: f64) -> Result<f64> {
        let jet = self.jet(s, 0.0)?;
        let mc = self.metric_coeffs(s)?;
        let h = FD_STEP * s.abs().max(1.0);
        if s.abs() + h > self.span {
            return Err(Error::domain(format!(
                "curvature stencil at s = {s} leaves the tabulated span"
            )));
        }
        let d_ss = self
            .d_s(s + h, 0.0)?
            .sub(&self.d_s(s - h, 0.0)?)
            .scale(1.0 / (2.0 * h));
        let pr = self.profile(s)?;
        let d_tt = AmbientVector::new(0.0, [0.0, -pr.g, 0.0]);
        let eps = self.params.eps;
        let ii_ss = metric_inner(eps, &d_ss, &jet.normal);
        let ii_tt = metric_inner(eps, &d_tt, &jet.normal);
        Ok(0.5 * (ii_ss / mc.e + ii_tt / mc.g))
    }

    /// Geodesic distance from the pole to the meridian point at `s`.
    pub fn pole_distance_at(&self, s: f64) -> Result<f64> {
        self.immerse(s, 0.0)?.pole_distance()
    }
}

/// Analytic turning-angle velocity `psi'(s)`.
fn dpsi(params: &AnnulusFamilyParams, s: f64) -> f64 {
    let eps = params.eps.eps();
    let a = params.a;
    let c2 = params.eps.cos(2.0 * s);
    let f2 = (1.0 - eps * a * c2) / 2.0;
    let g = ((eps + a * c2) / 2.0).sqrt();
    (eps * (1.0 - a * a)).sqrt() / (2.0 * f2 * g)
}

/// `psi(x)` by quadrature from the symmetry point; each table node is
/// integrated from 0 independently so errors stay at the quadrature
/// tolerance instead of accumulating across nodes.
fn turning_angle(params: &AnnulusFamilyParams, x: f64) -> Result<f64> {
    adaptive_simpson(|t| dpsi(params, t), 0.0, x, QUAD_ABS_TOL)
}

/// Smallest `s > 0` where the spherical band reaches the equator of the
/// model (`psi = pi/2`, so the first coordinate of the immersion vanishes).
fn equator_exit(params: &AnnulusFamilyParams) -> Result<f64> {
    let target = std::f64::consts::FRAC_PI_2;
    let angle = |s: f64| -> Result<f64> { Ok(turning_angle(params, s)? - target) };
    let mut lo = 0.0; // angle(0) = -pi/2, always on the negative side
    let mut hi = 0.25;
    while angle(hi)? < 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > EXIT_BRACKET_MAX {
            return Err(Error::numeric("no equator exit within the bracketing window"));
        }
    }
    let mut cached_err = None;
    let root = brent(
        |s| match angle(s) {
            Ok(v) => v,
            Err(e) => {
                cached_err = Some(e);
                f64::NAN
            }
        },
        lo,
        hi,
        ROOT_TOL,
    );
    match cached_err {
        Some(e) => Err(e),
        None => root,
    }
}

/// Unit normal to the band inside the space form via cofactors: the
/// Euclidean cofactor vector of the rows (position, d_s, d_theta) is
/// orthogonal to all three in the flat sense, and flipping the sign of its
/// first component by `eps` converts that into orthogonality for the ambient
/// bilinear form.
fn unit_normal(
    eps: SpaceFormSign,
    p: &AmbientVector,
    d_s: &AmbientVector,
    d_theta: &AmbientVector,
) -> Result<AmbientVector> {
    let rows = [
        [p.x, p.y[0], p.y[1], p.y[2]],
        [d_s.x, d_s.y[0], d_s.y[1], d_s.y[2]],
        [d_theta.x, d_theta.y[0], d_theta.y[1], d_theta.y[2]],
    ];
    let minor = |skip: usize| -> f64 {
        let mut cols = [0usize; 3];
        let mut k = 0;
        for c in 0..4 {
            if c != skip {
                cols[k] = c;
                k += 1;
            }
        }
        let m = |r: usize, c: usize| rows[r][cols[c]];
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    };
    let cof = [minor(0), -minor(1), minor(2), -minor(3)];
    let raw = AmbientVector::new(eps.eps() * cof[0], [cof[1], cof[2], cof[3]]);
    let norm2 = metric_inner(eps, &raw, &raw);
    if !(norm2 > 1e-24) {
        return Err(Error::Geometry(format!(
            "degenerate tangent frame, normal norm^2 = {norm2:.3e}"
        )));
    }
    Ok(raw.scale(1.0 / norm2.sqrt()))
}
