//! Error taxonomy shared by every module of the laboratory.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation (trig pole,
    /// negative radicand, evaluation at the rotation axis, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A point that fails the ambient quadric constraint or its open-ness
    /// condition beyond tolerance.
    #[error("invalid ambient point: {0}")]
    InvalidPoint(String),

    /// A family or run parameter outside its admissible range.
    #[error("parameter out of range: {0}")]
    ParamRange(String),

    /// The meridian never meets a geodesic sphere orthogonally inside the
    /// admissible window.
    #[error("no free-boundary configuration: {0}")]
    NoFreeBoundary(String),

    /// No family parameter realises the requested boundary-sphere radius.
    #[error("unachievable radius: {0}")]
    UnachievableRadius(String),

    /// An iterative kernel failed to converge or lost accuracy.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// A computed configuration violates one of its geometric certificates.
    #[error("geometry check failed: {0}")]
    Geometry(String),

    /// A sampled field too close to zero (or too mixed) to classify.
    #[error("degenerate field: {0}")]
    DegenerateField(String),

    /// Inconsistent run configuration (grid parity, tolerance signs, ...).
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}
