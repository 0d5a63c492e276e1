//! Adaptive Simpson quadrature with an absolute error target.

use crate::error::{Error, Result};
use crate::tol::QUAD_MAX_DEPTH;

/// Integrate `f` over `[a, b]` to absolute tolerance `abs_tol`.
///
/// Classic recursive Simpson bisection: a panel is accepted once the
/// half-panel estimates agree with the full panel to `15 * tol`, and the
/// standard 1/15 Richardson correction is added. Panels that fail to settle
/// within [`QUAD_MAX_DEPTH`] levels abort the whole integral.
pub fn adaptive_simpson<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
) -> Result<f64> {
    if !(abs_tol > 0.0) {
        return Err(Error::domain("quadrature tolerance must be positive"));
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    let est = recurse(&mut f, a, b, fa, fm, fb, whole, abs_tol, QUAD_MAX_DEPTH)?;
    if est.is_finite() {
        Ok(est)
    } else {
        Err(Error::numeric("quadrature produced a non-finite value"))
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::numeric(format!(
            "adaptive quadrature failed to reach tolerance on [{a}, {b}]"
        )));
    }
    let half = 0.5 * tol;
    Ok(recurse(f, a, m, fa, flm, fm, left, half, depth - 1)?
        + recurse(f, m, b, fm, frm, fb, right, half, depth - 1)?)
}
