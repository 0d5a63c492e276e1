//! Sign structure of scalar fields on the band: nodal domains, boundary
//! crossings, and the coarse patterns the laboratory distinguishes.
//!
//! Fields are sampled on a rectangular grid (circle direction wrapping),
//! nodes within a relative band of zero are treated as on the nodal set,
//! and the strict-sign components are merged with a union-find over the
//! 4-neighbor graph. Counting components of both signs instead of chasing
//! the nodal curve keeps the analysis robust against grazing zeros.

use crate::error::{Error, Result};
use crate::numerics::UnionFind;
use crate::rotational::AnnulusFamily;
use crate::spaceform::{coordinate_function, AmbientVector};
use crate::steklov::{ModeSolution, Parity};
use crate::tol::{A_PARITY_TOL, ZERO_BAND_REL};
use serde::Serialize;

/// Tangential-slope ceiling (relative to the field's sup) under which a
/// boundary zero counts as a tangential touch rather than a crossing.
const TANGENT_SLOPE_REL: f64 = 1e-3;

/// A scalar field sampled on the band, row-major with the circle inner.
pub struct ScalarField {
    pub n_s: usize,
    pub n_theta: usize,
    pub s0: f64,
    values: Vec<f64>,
}

/// One separated mode entering a linear combination: the radial solution
/// together with its two angular amplitudes.
pub struct ModeShape<'a> {
    pub sol: &'a ModeSolution,
    pub c_cos: f64,
    pub c_sin: f64,
}

impl ScalarField {
    /// Sample an arbitrary function of `(s, theta)`.
    pub fn from_fn(
        s0: f64,
        n_s: usize,
        n_theta: usize,
        mut f: impl FnMut(f64, f64) -> Result<f64>,
    ) -> Result<Self> {
        check_grid(n_s, n_theta)?;
        if !(s0 > 0.0) {
            return Err(Error::domain("field needs a positive half-width"));
        }
        let mut values = Vec::with_capacity(n_s * n_theta);
        for i in 0..n_s {
            let s = -s0 + 2.0 * s0 * (i as f64) / ((n_s - 1) as f64);
            for j in 0..n_theta {
                let theta = 2.0 * std::f64::consts::PI * (j as f64) / (n_theta as f64);
                values.push(f(s, theta)?);
            }
        }
        Ok(ScalarField {
            n_s,
            n_theta,
            s0,
            values,
        })
    }

    /// Sample a linear combination of separated modes. The half-width comes
    /// from the radial trajectories, which must agree on it.
    pub fn from_modes(shapes: &[ModeShape], n_s: usize, n_theta: usize) -> Result<Self> {
        check_grid(n_s, n_theta)?;
        let first = shapes
            .first()
            .ok_or_else(|| Error::DegenerateField("no modes in the combination".into()))?;
        let s0 = first.sol.h * (first.sol.w.len() - 1) as f64;
        for sh in shapes {
            let other = sh.sol.h * (sh.sol.w.len() - 1) as f64;
            if (other - s0).abs() > 1e-12 * s0.max(1.0) {
                return Err(Error::domain(
                    "modes in a combination must share the band width",
                ));
            }
        }
        let mut values = Vec::with_capacity(n_s * n_theta);
        for i in 0..n_s {
            let s = -s0 + 2.0 * s0 * (i as f64) / ((n_s - 1) as f64);
            for j in 0..n_theta {
                let theta = 2.0 * std::f64::consts::PI * (j as f64) / (n_theta as f64);
                let mut u = 0.0;
                for sh in shapes {
                    let radial = radial_value(sh.sol, s);
                    let mf = sh.sol.m as f64;
                    u += radial
                        * (sh.c_cos * (mf * theta).cos() + sh.c_sin * (mf * theta).sin());
                }
                values.push(u);
            }
        }
        Ok(ScalarField {
            n_s,
            n_theta,
            s0,
            values,
        })
    }

    /// Restriction of an ambient coordinate functional to the band.
    pub fn from_coordinate(
        family: &AnnulusFamily,
        s0: f64,
        v: &AmbientVector,
        n_s: usize,
        n_theta: usize,
    ) -> Result<Self> {
        let eps = family.params().eps();
        ScalarField::from_fn(s0, n_s, n_theta, |s, theta| {
            Ok(coordinate_function(eps, v, &family.immerse(s, theta)?))
        })
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_theta + j]
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

fn check_grid(n_s: usize, n_theta: usize) -> Result<()> {
    if n_s < 3 || n_theta < 4 {
        return Err(Error::ParamRange(format!(
            "grid {n_s} x {n_theta} too small to carry sign structure"
        )));
    }
    Ok(())
}

/// Linear interpolation of the radial trajectory at `|s|`, with the parity
/// sign reattached for negative `s`.
fn radial_value(sol: &ModeSolution, s: f64) -> f64 {
    let n = sol.w.len() - 1;
    let t = s.abs() / sol.h;
    let k = (t.floor() as usize).min(n - 1);
    let frac = t - k as f64;
    let w = sol.w[k][0] * (1.0 - frac) + sol.w[k + 1][0] * frac;
    match sol.parity {
        Parity::Even => w,
        Parity::Odd => {
            if s < 0.0 {
                -w
            } else {
                w
            }
        }
    }
}

/// Coarse classification of the nodal picture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NodalPattern {
    /// Nodal set is a closed curve separating the two boundary circles.
    InteriorCircle,
    /// Nodal set touches each circle tangentially at one point.
    BoundaryWedges,
    /// Nodal set crosses each circle transversally twice.
    CrossCuts,
    Other,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodalReport {
    pub domain_count: usize,
    pub positive_domains: usize,
    pub negative_domains: usize,
    /// Zero clusters on the left and right boundary circles.
    pub boundary_zero_clusters: [usize; 2],
    /// Strict sign changes around the left and right boundary circles.
    pub boundary_sign_flips: [usize; 2],
    pub domains_touching_boundary: usize,
    pub has_interior_loop: bool,
    pub pattern: NodalPattern,
}

/// Count sign components and boundary crossings of a sampled field.
pub fn analyze(field: &ScalarField) -> Result<NodalReport> {
    let (n_s, n_t) = (field.n_s, field.n_theta);
    // max-folds skip NaN, so non-finite samples need their own check
    if field.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::numeric("field contains non-finite samples"));
    }
    let amp = field.sup();
    if amp == 0.0 {
        return Err(Error::DegenerateField("field vanishes identically".into()));
    }
    let band = ZERO_BAND_REL * amp;
    let sign_of = |v: f64| -> i8 {
        if v.abs() <= band {
            0
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    };
    let signs: Vec<i8> = field.values.iter().map(|&v| sign_of(v)).collect();

    let mut uf = UnionFind::new(n_s * n_t);
    let idx = |i: usize, j: usize| i * n_t + j;
    for i in 0..n_s {
        for j in 0..n_t {
            let here = signs[idx(i, j)];
            if here == 0 {
                continue;
            }
            if i + 1 < n_s && signs[idx(i + 1, j)] == here {
                uf.union(idx(i, j), idx(i + 1, j));
            }
            let jn = (j + 1) % n_t;
            if signs[idx(i, jn)] == here {
                uf.union(idx(i, j), idx(i, jn));
            }
        }
    }

    let nonzero = |filter: i8| -> Vec<usize> {
        (0..n_s * n_t)
            .filter(|&k| signs[k] != 0 && (filter == 0 || signs[k] == filter))
            .collect()
    };
    let domain_count = uf.count_distinct(nonzero(0));
    let positive_domains = uf.count_distinct(nonzero(1));
    let negative_domains = uf.count_distinct(nonzero(-1));

    let left: Vec<i8> = (0..n_t).map(|j| signs[idx(0, j)]).collect();
    let right: Vec<i8> = (0..n_t).map(|j| signs[idx(n_s - 1, j)]).collect();
    let boundary_zero_clusters = [circular_zero_clusters(&left), circular_zero_clusters(&right)];
    let boundary_sign_flips = [circular_sign_flips(&left), circular_sign_flips(&right)];

    let mut touching: Vec<usize> = Vec::new();
    for &i in &[0usize, n_s - 1] {
        for j in 0..n_t {
            if signs[idx(i, j)] != 0 {
                touching.push(uf.find(idx(i, j)));
            }
        }
    }
    touching.sort_unstable();
    touching.dedup();
    let domains_touching_boundary = touching.len();

    let clean_circles = boundary_zero_clusters == [0, 0] && boundary_sign_flips == [0, 0];
    let has_interior_loop = clean_circles
        && (0..n_t).all(|j| {
            let column: Vec<i8> = (0..n_s).map(|i| signs[idx(i, j)]).collect();
            linear_sign_flips(&column) >= 1
        });

    let pattern = if has_interior_loop {
        NodalPattern::InteriorCircle
    } else if boundary_sign_flips == [2, 2] {
        NodalPattern::CrossCuts
    } else if boundary_zero_clusters == [1, 1]
        && boundary_sign_flips == [0, 0]
        && tangential_touch(field, &left, 0, amp)
        && tangential_touch(field, &right, n_s - 1, amp)
    {
        NodalPattern::BoundaryWedges
    } else {
        NodalPattern::Other
    };

    Ok(NodalReport {
        domain_count,
        positive_domains,
        negative_domains,
        boundary_zero_clusters,
        boundary_sign_flips,
        domains_touching_boundary,
        has_interior_loop,
        pattern,
    })
}

/// Two-component certificate: the field must split the band into exactly one
/// positive and one negative domain.
pub fn two_piece_check(field: &ScalarField) -> Result<NodalReport> {
    let report = analyze(field)?;
    if report.domain_count != 2 || report.positive_domains != 1 || report.negative_domains != 1 {
        return Err(Error::Geometry(format!(
            "field splits the band into {} domains ({} positive, {} negative) instead of an \
             opposite-sign pair",
            report.domain_count, report.positive_domains, report.negative_domains
        )));
    }
    Ok(report)
}

/// Sup-relative defect of the field under the half-turn-with-reflection
/// symmetry, which maps grid nodes to grid nodes when the meridian node
/// count is odd and the circle count even.
pub fn half_turn_defect(field: &ScalarField, class: Parity) -> Result<f64> {
    if field.n_s % 2 == 0 || field.n_theta % 2 != 0 {
        return Err(Error::domain(
            "half-turn check needs an odd meridian count and an even circle count",
        ));
    }
    let amp = field.sup();
    if amp == 0.0 {
        return Err(Error::DegenerateField("field vanishes identically".into()));
    }
    let sgn = match class {
        Parity::Even => 1.0,
        Parity::Odd => -1.0,
    };
    let mut defect = 0.0f64;
    for i in 0..field.n_s {
        for j in 0..field.n_theta {
            let mi = field.n_s - 1 - i;
            let mj = (j + field.n_theta / 2) % field.n_theta;
            defect = defect.max((field.value(i, j) - sgn * field.value(mi, mj)).abs());
        }
    }
    Ok(defect / amp)
}

/// Convenience wrapper asserting the defect is inside the certification
/// tolerance.
pub fn check_half_turn(field: &ScalarField, class: Parity) -> Result<f64> {
    let defect = half_turn_defect(field, class)?;
    if defect > A_PARITY_TOL {
        return Err(Error::Geometry(format!(
            "half-turn symmetry defect {defect:.3e} exceeds {A_PARITY_TOL:.0e}"
        )));
    }
    Ok(defect)
}

fn circular_zero_clusters(signs: &[i8]) -> usize {
    let n = signs.len();
    if signs.iter().all(|&s| s == 0) {
        return 1;
    }
    (0..n)
        .filter(|&k| signs[k] == 0 && signs[(k + n - 1) % n] != 0)
        .count()
}

fn circular_sign_flips(signs: &[i8]) -> usize {
    let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    if nz.len() < 2 {
        return 0;
    }
    (0..nz.len())
        .filter(|&k| nz[k] != nz[(k + 1) % nz.len()])
        .count()
}

fn linear_sign_flips(signs: &[i8]) -> usize {
    let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// True when every boundary zero cluster has a flat crossing: equal signs on
/// both flanks (guaranteed by zero flips) and a tangential slope through the
/// cluster below [`TANGENT_SLOPE_REL`] of the sup.
fn tangential_touch(field: &ScalarField, signs: &[i8], row: usize, amp: f64) -> bool {
    let n = signs.len();
    for k in 0..n {
        let prev = (k + n - 1) % n;
        if signs[k] == 0 && signs[prev] != 0 {
            // walk to the end of the cluster
            let mut end = k;
            while signs[(end + 1) % n] == 0 {
                end = (end + 1) % n;
                if end == k {
                    break;
                }
            }
            let before = field.value(row, prev);
            let after = field.value(row, (end + 1) % n);
            if (after - before).abs() > TANGENT_SLOPE_REL * amp {
                return false;
            }
        }
    }
    true
}
