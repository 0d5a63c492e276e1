//! Self-contained numerical kernels.
//!
//! Everything downstream (geometry, shooting, the finite-difference oracle)
//! is built on these routines alone, so each kernel stays small, totally
//! deterministic, and carries its own property tests.

mod cheb;
mod eigen;
mod linsys;
mod ode;
mod quad;
mod root;
mod unionfind;

pub use cheb::Chebyshev;
pub use eigen::jacobi_eigen;
pub use linsys::{lu_factor, lu_solve, BandedLu};
pub use ode::rk4_integrate;
pub use quad::adaptive_simpson;
pub use root::brent;
pub use unionfind::UnionFind;
