//! Chebyshev–Lobatto interpolation with barycentric evaluation.

use crate::error::{Error, Result};

/// Polynomial interpolant of a smooth function on `[a, b]` through the
/// Chebyshev–Lobatto nodes, evaluated with the second barycentric formula
/// (weights ±1, halved at the endpoints). For analytic integrands the error
/// decays geometrically in the node count.
pub struct Chebyshev {
    a: f64,
    b: f64,
    /// Values at x_k = midpoint + halfwidth * cos(k*pi/n), k = 0..=n.
    vals: Vec<f64>,
}

impl Chebyshev {
    /// Sample `f` at `n + 1` Lobatto nodes of `[a, b]` (`n >= 2`).
    pub fn fit<F: FnMut(f64) -> Result<f64>>(a: f64, b: f64, n: usize, mut f: F) -> Result<Self> {
        if !(b > a) || n < 2 {
            return Err(Error::domain("Chebyshev fit needs b > a and n >= 2"));
        }
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut vals = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let x = mid + half * (k as f64 * std::f64::consts::PI / n as f64).cos();
            vals.push(f(x.clamp(a, b))?);
        }
        Ok(Chebyshev { a, b, vals })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// Evaluate the interpolant; `x` must lie inside the fitted interval.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.vals.len() - 1;
        let mid = 0.5 * (self.a + self.b);
        let half = 0.5 * (self.b - self.a);
        let mut num = 0.0;
        let mut den = 0.0;
        for (k, &fk) in self.vals.iter().enumerate() {
            let xk = mid + half * (k as f64 * std::f64::consts::PI / n as f64).cos();
            let dx = x - xk;
            if dx == 0.0 {
                return fk;
            }
            let mut w = if k % 2 == 0 { 1.0 } else { -1.0 };
            if k == 0 || k == n {
                w *= 0.5;
            }
            let c = w / dx;
            num += c * fk;
            den += c;
        }
        num / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolates_exponential_to_machine_precision() {
        let ch = Chebyshev::fit(0.0, 2.0, 32, |x| Ok(x.exp())).unwrap();
        for i in 0..200 {
            let x = 2.0 * i as f64 / 199.0;
            assert!((ch.eval(x) - x.exp()).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn exact_at_nodes_and_endpoints() {
        let ch = Chebyshev::fit(-1.0, 3.0, 16, |x| Ok(x * x * x - x)).unwrap();
        assert_eq!(ch.eval(-1.0), -1.0f64.powi(3) + 1.0);
        assert_eq!(ch.eval(3.0), 27.0 - 3.0);
    }

    #[test]
    fn reproduces_low_degree_polynomials_exactly() {
        // Degree 5 through >= 6 nodes: interpolation is exact up to roundoff.
        let p = |x: f64| 1.0 + x * (2.0 + x * (-1.0 + x * (0.5 + x * (1.5 - 0.25 * x))));
        let ch = Chebyshev::fit(0.0, 1.0, 8, |x| Ok(p(x))).unwrap();
        for i in 0..100 {
            let x = i as f64 / 99.0;
            assert!((ch.eval(x) - p(x)).abs() < 1e-14);
        }
    }

    #[test]
    fn propagates_sampling_errors() {
        let r: Result<Chebyshev> = Chebyshev::fit(0.0, 1.0, 8, |x| {
            if x > 0.9 {
                Err(Error::domain("pole"))
            } else {
                Ok(x)
            }
        });
        assert!(r.is_err());
    }

    #[test]
    fn rejects_bad_interval() {
        assert!(Chebyshev::fit(1.0, 1.0, 8, |x| Ok(x)).is_err());
        assert!(Chebyshev::fit(0.0, 1.0, 1, |x| Ok(x)).is_err());
    }
}
