//! Ambient models of the two curved space forms.
//!
//! Both geometries are carried as the quadric
//! `x^2 + eps * |y|^2 = 1`, `x > 0`, inside R^4 with the bilinear form
//! `eps * dx^2 + |dy|^2`: the open upper hemisphere of the round 3-sphere for
//! `eps = +1`, the upper hyperboloid sheet (hyperbolic 3-space) for
//! `eps = -1`. The distinguished pole is `(1, 0, 0, 0)`.

use crate::error::{Error, Result};
use crate::tol::CONSTRAINT_TOL;
use serde::{Deserialize, Serialize};

/// Curvature sign selecting the geometry: `Spherical` is `eps = +1`,
/// `Hyperbolic` is `eps = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceFormSign {
    Spherical,
    Hyperbolic,
}

/// Guard for the circular trig poles: |cos| or |sin| below this is a pole.
const TRIG_POLE_TOL: f64 = 1e-14;

impl SpaceFormSign {
    pub fn eps(self) -> f64 {
        match self {
            SpaceFormSign::Spherical => 1.0,
            SpaceFormSign::Hyperbolic => -1.0,
        }
    }

    pub fn from_eps(eps: i32) -> Result<Self> {
        match eps {
            1 => Ok(SpaceFormSign::Spherical),
            -1 => Ok(SpaceFormSign::Hyperbolic),
            _ => Err(Error::ParamRange(format!("curvature sign must be +1 or -1, got {eps}"))),
        }
    }

    /// sin for `eps = +1`, sinh for `eps = -1`.
    pub fn sin(self, t: f64) -> f64 {
        match self {
            SpaceFormSign::Spherical => t.sin(),
            SpaceFormSign::Hyperbolic => t.sinh(),
        }
    }

    /// cos for `eps = +1`, cosh for `eps = -1`.
    pub fn cos(self, t: f64) -> f64 {
        match self {
            SpaceFormSign::Spherical => t.cos(),
            SpaceFormSign::Hyperbolic => t.cosh(),
        }
    }

    pub fn tan(self, t: f64) -> Result<f64> {
        let c = self.cos(t);
        if c.abs() < TRIG_POLE_TOL {
            return Err(Error::domain(format!("tangent pole at t = {t}")));
        }
        Ok(self.sin(t) / c)
    }

    pub fn cot(self, t: f64) -> Result<f64> {
        let s = self.sin(t);
        if s.abs() < TRIG_POLE_TOL {
            return Err(Error::domain(format!("cotangent pole at t = {t}")));
        }
        Ok(self.cos(t) / s)
    }

    /// Inverse of `cos`: arccos on [-1, 1] / arccosh on [1, inf). Inputs
    /// drifting past the branch point by no more than [`CONSTRAINT_TOL`]
    /// are clamped; anything worse is a domain error.
    pub fn acos(self, x: f64) -> Result<f64> {
        match self {
            SpaceFormSign::Spherical => {
                if x.abs() > 1.0 + CONSTRAINT_TOL {
                    return Err(Error::domain(format!("arccos argument {x} outside [-1, 1]")));
                }
                Ok(x.clamp(-1.0, 1.0).acos())
            }
            SpaceFormSign::Hyperbolic => {
                if x < 1.0 - CONSTRAINT_TOL {
                    return Err(Error::domain(format!("arccosh argument {x} below 1")));
                }
                Ok(x.max(1.0).acosh())
            }
        }
    }
}

impl Serialize for SpaceFormSign {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_i8(self.eps() as i8)
    }
}

impl<'de> Deserialize<'de> for SpaceFormSign {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = i8::deserialize(de)?;
        SpaceFormSign::from_eps(v as i32).map_err(serde::de::Error::custom)
    }
}

/// The four ε-trig values at one argument. Construction fails at a pole of
/// tan or cot, so a successful value always carries all four entries.
#[derive(Clone, Copy, Debug)]
pub struct EpsTrig {
    pub sin: f64,
    pub cos: f64,
    pub tan: f64,
    pub cot: f64,
}

pub fn eps_trig(eps: SpaceFormSign, t: f64) -> Result<EpsTrig> {
    Ok(EpsTrig {
        sin: eps.sin(t),
        cos: eps.cos(t),
        tan: eps.tan(t)?,
        cot: eps.cot(t)?,
    })
}

/// A vector of the ambient R^4, split as the distinguished coordinate `x`
/// plus the Euclidean triple `y`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmbientVector {
    pub x: f64,
    pub y: [f64; 3],
}

impl AmbientVector {
    pub fn new(x: f64, y: [f64; 3]) -> Self {
        AmbientVector { x, y }
    }

    pub fn zero() -> Self {
        AmbientVector { x: 0.0, y: [0.0; 3] }
    }

    /// Unit vector pointing at the pole of the space form.
    pub fn pole() -> Self {
        AmbientVector { x: 1.0, y: [0.0; 3] }
    }

    /// Standard basis vector 0..=3.
    pub fn basis(i: usize) -> Self {
        let mut v = AmbientVector::zero();
        match i {
            0 => v.x = 1.0,
            1..=3 => v.y[i - 1] = 1.0,
            _ => panic!("basis index {i} out of range"),
        }
        v
    }

    pub fn y_norm(&self) -> f64 {
        (self.y[0] * self.y[0] + self.y[1] * self.y[1] + self.y[2] * self.y[2]).sqrt()
    }

    pub fn add(&self, o: &AmbientVector) -> AmbientVector {
        AmbientVector {
            x: self.x + o.x,
            y: [self.y[0] + o.y[0], self.y[1] + o.y[1], self.y[2] + o.y[2]],
        }
    }

    pub fn sub(&self, o: &AmbientVector) -> AmbientVector {
        AmbientVector {
            x: self.x - o.x,
            y: [self.y[0] - o.y[0], self.y[1] - o.y[1], self.y[2] - o.y[2]],
        }
    }

    pub fn scale(&self, c: f64) -> AmbientVector {
        AmbientVector {
            x: c * self.x,
            y: [c * self.y[0], c * self.y[1], c * self.y[2]],
        }
    }
}

/// Bilinear form of the ambient model: `eps * u.x * v.x + <u.y, v.y>`.
pub fn metric_inner(eps: SpaceFormSign, u: &AmbientVector, v: &AmbientVector) -> f64 {
    eps.eps() * u.x * v.x + u.y[0] * v.y[0] + u.y[1] * v.y[1] + u.y[2] * v.y[2]
}

/// A point on the space form: quadric constraint within [`CONSTRAINT_TOL`]
/// and strictly positive `x`.
#[derive(Clone, Copy, Debug)]
pub struct AmbientPoint {
    eps: SpaceFormSign,
    v: AmbientVector,
}

impl AmbientPoint {
    pub fn new(eps: SpaceFormSign, v: AmbientVector) -> Result<Self> {
        let residual = constraint_residual(eps, &v);
        if !(residual <= CONSTRAINT_TOL) {
            return Err(Error::InvalidPoint(format!(
                "quadric residual {residual:.3e} exceeds {CONSTRAINT_TOL:.0e} at x = {}, y = {:?}",
                v.x, v.y
            )));
        }
        if !(v.x > 0.0) {
            return Err(Error::InvalidPoint(format!(
                "point leaves the open model (x = {} <= 0)",
                v.x
            )));
        }
        Ok(AmbientPoint { eps, v })
    }

    /// The pole `(1, 0, 0, 0)`.
    pub fn pole(eps: SpaceFormSign) -> Self {
        AmbientPoint {
            eps,
            v: AmbientVector::pole(),
        }
    }

    /// Point at geodesic distance `r` from the pole in unit direction `dir`.
    pub fn from_polar(eps: SpaceFormSign, r: f64, dir: [f64; 3]) -> Result<Self> {
        let n = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
        if !(n > 0.0) || !r.is_finite() {
            return Err(Error::domain("polar point needs a nonzero direction and finite r"));
        }
        let (sr, cr) = (eps.sin(r), eps.cos(r));
        AmbientPoint::new(
            eps,
            AmbientVector {
                x: cr,
                y: [sr * dir[0] / n, sr * dir[1] / n, sr * dir[2] / n],
            },
        )
    }

    pub fn eps(&self) -> SpaceFormSign {
        self.eps
    }

    pub fn vector(&self) -> &AmbientVector {
        &self.v
    }

    pub fn constraint_residual(&self) -> f64 {
        constraint_residual(self.eps, &self.v)
    }

    /// Geodesic distance to the pole; `x` carries it as `x = cos_eps r`.
    pub fn pole_distance(&self) -> Result<f64> {
        self.eps.acos(self.v.x)
    }

    /// The isometry `(x, y) -> (x, -y)`; an exact involution in floating
    /// point since it only flips sign bits.
    pub fn antipodal(&self) -> AmbientPoint {
        AmbientPoint {
            eps: self.eps,
            v: AmbientVector {
                x: self.v.x,
                y: [-self.v.y[0], -self.v.y[1], -self.v.y[2]],
            },
        }
    }
}

fn constraint_residual(eps: SpaceFormSign, v: &AmbientVector) -> f64 {
    let ynorm2 = v.y[0] * v.y[0] + v.y[1] * v.y[1] + v.y[2] * v.y[2];
    (v.x * v.x + eps.eps() * ynorm2 - 1.0).abs()
}

/// Restriction of the ambient linear functional `<v, .>` to the space form;
/// these are the "coordinate functions" whose boundary behaviour the
/// laboratory checks.
pub fn coordinate_function(eps: SpaceFormSign, v: &AmbientVector, p: &AmbientPoint) -> f64 {
    metric_inner(eps, v, p.vector())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const BOTH: [SpaceFormSign; 2] = [SpaceFormSign::Spherical, SpaceFormSign::Hyperbolic];

    #[test]
    fn trig_matches_circular_and_hyperbolic() {
        let t = eps_trig(SpaceFormSign::Spherical, 0.3).unwrap();
        assert!((t.sin - 0.3f64.sin()).abs() < 1e-15);
        assert!((t.cos - 0.3f64.cos()).abs() < 1e-15);
        let t = eps_trig(SpaceFormSign::Hyperbolic, 0.3).unwrap();
        assert!((t.sin - 0.3f64.sinh()).abs() < 1e-15);
        assert!((t.tan - 0.3f64.tanh()).abs() < 1e-15);
    }

    #[test]
    fn trig_poles_are_domain_errors() {
        assert!(eps_trig(SpaceFormSign::Spherical, 0.0).is_err()); // cot pole
        assert!(eps_trig(SpaceFormSign::Spherical, std::f64::consts::FRAC_PI_2).is_err());
        assert!(eps_trig(SpaceFormSign::Hyperbolic, 0.0).is_err()); // coth pole
        assert!(eps_trig(SpaceFormSign::Hyperbolic, 0.7).is_ok()); // tanh has none
    }

    #[test]
    fn pole_distance_examples() {
        let p = AmbientPoint::pole(SpaceFormSign::Spherical);
        assert_eq!(p.pole_distance().unwrap(), 0.0);
        let q = AmbientPoint::new(
            SpaceFormSign::Hyperbolic,
            AmbientVector::new(1.0f64.cosh(), [1.0f64.sinh(), 0.0, 0.0]),
        )
        .unwrap();
        assert!((q.pole_distance().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constraint_rejection() {
        let bad = AmbientVector::new(1.1, [0.0, 0.0, 0.0]);
        assert!(AmbientPoint::new(SpaceFormSign::Spherical, bad).is_err());
        let equator = AmbientVector::new(0.0, [1.0, 0.0, 0.0]);
        assert!(AmbientPoint::new(SpaceFormSign::Spherical, equator).is_err());
    }

    #[test]
    fn antipodal_is_exact_involution_and_fixes_x() {
        for eps in BOTH {
            let p = AmbientPoint::from_polar(eps, 0.8, [0.3, -0.5, 0.81]).unwrap();
            let a = p.antipodal();
            assert_eq!(a.vector().x, p.vector().x);
            let back = a.antipodal();
            assert_eq!(back.vector().x.to_bits(), p.vector().x.to_bits());
            for i in 0..3 {
                assert_eq!(back.vector().y[i].to_bits(), p.vector().y[i].to_bits());
            }
        }
    }

    #[test]
    fn coordinate_function_at_pole_sees_the_metric_sign() {
        let pole_h = AmbientPoint::pole(SpaceFormSign::Hyperbolic);
        let v = AmbientVector::pole();
        assert_eq!(
            coordinate_function(SpaceFormSign::Hyperbolic, &v, &pole_h),
            -1.0
        );
        let pole_s = AmbientPoint::pole(SpaceFormSign::Spherical);
        assert_eq!(coordinate_function(SpaceFormSign::Spherical, &v, &pole_s), 1.0);
    }

    #[test]
    fn y_span_coordinates_are_odd_under_antipodal_exactly() {
        for eps in BOTH {
            let p = AmbientPoint::from_polar(eps, 1.1, [0.2, 0.9, -0.4]).unwrap();
            for i in 1..4 {
                let v = AmbientVector::basis(i);
                let plus = coordinate_function(eps, &v, &p);
                let minus = coordinate_function(eps, &v, &p.antipodal());
                assert_eq!(plus.to_bits(), (-minus).to_bits());
            }
        }
    }

    proptest! {
        #[test]
        fn polar_points_satisfy_constraint(
            r in 0.01f64..1.5,
            d in proptest::array::uniform3(-1.0f64..1.0),
            hyp in proptest::bool::ANY,
        ) {
            prop_assume!(d.iter().map(|v| v * v).sum::<f64>() > 1e-4);
            let eps = if hyp { SpaceFormSign::Hyperbolic } else { SpaceFormSign::Spherical };
            let p = AmbientPoint::from_polar(eps, r, d).unwrap();
            prop_assert!(p.constraint_residual() <= 1e-10);
            prop_assert!((p.pole_distance().unwrap() - r).abs() < 1e-12);
        }

        #[test]
        fn trig_identity_cos2_plus_eps_sin2(
            t in -3.0f64..3.0,
            hyp in proptest::bool::ANY,
        ) {
            let eps = if hyp { SpaceFormSign::Hyperbolic } else { SpaceFormSign::Spherical };
            let (s, c) = (eps.sin(t), eps.cos(t));
            prop_assert!((c * c + eps.eps() * s * s - 1.0).abs() < 1e-12);
        }

        #[test]
        fn metric_inner_is_symmetric_bilinear(
            u in proptest::array::uniform4(-2.0f64..2.0),
            v in proptest::array::uniform4(-2.0f64..2.0),
            w in proptest::array::uniform4(-2.0f64..2.0),
            c in -3.0f64..3.0,
            hyp in proptest::bool::ANY,
        ) {
            let eps = if hyp { SpaceFormSign::Hyperbolic } else { SpaceFormSign::Spherical };
            let uv = AmbientVector::new(u[0], [u[1], u[2], u[3]]);
            let vv = AmbientVector::new(v[0], [v[1], v[2], v[3]]);
            let wv = AmbientVector::new(w[0], [w[1], w[2], w[3]]);
            let sym = metric_inner(eps, &uv, &vv) - metric_inner(eps, &vv, &uv);
            prop_assert_eq!(sym, 0.0);
            let lin = metric_inner(eps, &uv.add(&wv.scale(c)), &vv)
                - (metric_inner(eps, &uv, &vv) + c * metric_inner(eps, &wv, &vv));
            prop_assert!(lin.abs() < 1e-12);
        }
    }
}
