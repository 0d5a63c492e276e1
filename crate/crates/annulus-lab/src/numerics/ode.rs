//! Fixed-step classical RK4 for small first-order systems.

use crate::error::{Error, Result};

/// Integrate a 2-dimensional first-order system with `n_steps` RK4 steps of
/// size `h`, returning the full trajectory (`n_steps + 1` states).
///
/// The right-hand side is addressed by *half-step index*: step `i` evaluates
/// `rhs` at indices `2i`, `2i + 1`, `2i + 2`, i.e. at times `i*h`,
/// `(i + 1/2)*h`, `(i + 1)*h`. Coefficient-table RHSs get exact, repeatable
/// node alignment this way, and closures over continuous time simply map the
/// index back to `idx * h / 2`.
pub fn rk4_integrate<F>(n_steps: usize, h: f64, y0: [f64; 2], rhs: F) -> Result<Vec<[f64; 2]>>
where
    F: Fn(usize, [f64; 2]) -> [f64; 2],
{
    if n_steps == 0 || !(h != 0.0 && h.is_finite()) {
        return Err(Error::domain("RK4 needs a finite nonzero step and n > 0"));
    }
    let mut out = Vec::with_capacity(n_steps + 1);
    let mut y = y0;
    out.push(y);
    for i in 0..n_steps {
        let k1 = rhs(2 * i, y);
        let k2 = rhs(2 * i + 1, [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
        let k3 = rhs(2 * i + 1, [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
        let k4 = rhs(2 * i + 2, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        y = [
            y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ];
        if !(y[0].is_finite() && y[1].is_finite()) {
            return Err(Error::numeric(format!(
                "RK4 state blew up at step {i} of {n_steps}"
            )));
        }
        out.push(y);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn harmonic(n: usize) -> Vec<[f64; 2]> {
        let h = std::f64::consts::PI / n as f64;
        rk4_integrate(n, h, [1.0, 0.0], |_, y| [y[1], -y[0]]).unwrap()
    }

    #[test]
    fn reproduces_cosine_over_half_period() {
        let traj = harmonic(4096);
        let end = traj.last().unwrap();
        assert!((end[0] + 1.0).abs() < 1e-10, "w(pi) = {}", end[0]);
        assert!(end[1].abs() < 1e-10);
    }

    #[test]
    fn fourth_order_convergence() {
        let err = |n: usize| (harmonic(n).last().unwrap()[0] + 1.0).abs();
        let ratio = err(64) / err(128);
        assert!(
            (8.0..32.0).contains(&ratio),
            "halving the step should cut the error ~16x, got {ratio}"
        );
    }

    #[test]
    fn exponential_growth_and_decay() {
        let h = 1.0 / 2048.0;
        let traj = rk4_integrate(2048, h, [1.0, -1.0], |_, y| [-y[0], -y[1]]).unwrap();
        let end = traj.last().unwrap();
        assert!((end[0] - (-1.0f64).exp()).abs() < 1e-12);
        assert!((end[1] + (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn half_step_indices_hit_midpoints() {
        // Integrate y' = t with an index-addressed RHS; exact for RK4.
        let n = 100;
        let h = 0.01;
        let traj = rk4_integrate(n, h, [0.0, 0.0], |idx, _| [idx as f64 * h / 2.0, 0.0]).unwrap();
        let end = traj.last().unwrap()[0];
        assert!((end - 0.5).abs() < 1e-14);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(rk4_integrate(0, 0.1, [0.0, 0.0], |_, y| y).is_err());
        assert!(rk4_integrate(10, 0.0, [0.0, 0.0], |_, y| y).is_err());
    }

    #[test]
    fn detects_blow_up() {
        let r = rk4_integrate(2000, 1.0, [1.0, 1.0], |_, y| [y[0] * y[0], 0.0]);
        assert!(r.is_err());
    }
}
