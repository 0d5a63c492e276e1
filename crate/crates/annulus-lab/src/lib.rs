//! Numerical laboratory for rotational free-boundary minimal annuli inside
//! geodesic balls of the two curved space forms (upper hemisphere, hyperbolic
//! space), together with their boundary spectrum for the frequency-shifted
//! Laplace problem and nodal-domain analysis of the low eigenfunctions.
//!
//! The crate is organized bottom-up:
//!
//! * [`numerics`] — self-contained kernels (quadrature, RK4, Brent, Jacobi
//!   eigensolver, LU, union-find, Chebyshev interpolation),
//! * [`spaceform`] — the ambient quadric models and their ε-indexed trigonometry,
//! * [`rotational`] — the one-parameter annulus family, immersion jets,
//!   curvature and Helmholtz residuals,
//! * [`freeboundary`] — locating the boundary circle that meets a geodesic
//!   sphere orthogonally, plus the associated certificates,
//! * [`steklov`] — separated radial problems and the boundary spectrum,
//! * [`dtn`] — an independent finite-difference Dirichlet-to-Neumann oracle,
//! * [`nodal`] — sign-domain counting, pattern classification, parity checks,
//! * [`mesh`] — triangulated export of the immersed annulus.

pub mod dtn;
pub mod error;
pub mod freeboundary;
pub mod mesh;
pub mod nodal;
pub mod numerics;
pub mod parallel;
pub mod rotational;
pub mod spaceform;
pub mod steklov;
pub mod tol;

pub use error::{Error, Result};
pub use freeboundary::FreeBoundaryConfig;
pub use rotational::{AnnulusFamily, AnnulusFamilyParams};
pub use spaceform::{AmbientPoint, AmbientVector, SpaceFormSign};
pub use tol::ToleranceConfig;
