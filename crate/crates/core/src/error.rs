use thiserror::Error;

use crate::quaternion::Quaternion;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Structured input does not have the expected shape.
    #[error("format error: {0}")]
    Format(String),

    /// The symmetrization vanishes at the evaluation point.
    #[error("singularity: |f^s(q)| = {modulus:e} at q = {point}")]
    Singular { point: Quaternion, modulus: f64 },

    /// A fixture does not satisfy the hypothesis of the check being run.
    #[error("precondition violated: {reason} (measured violation {measured:e})")]
    Precondition { reason: String, measured: f64 },

    /// The norm maximum is not attained at an interior point.
    #[error("NotApplicable: {0}")]
    NotApplicable(String),

    /// The constructive decomposition produced blocks that should vanish but do not.
    #[error("decomposition residual {residual:e} exceeds tolerance {tolerance:e}")]
    Residual { residual: f64, tolerance: f64 },

    /// The complex singular values failed to pair up.
    #[error("singular values {a} and {b} do not pair within tolerance")]
    Pairing { a: f64, b: f64 },

    #[error("no convergence within depth {depth}: best error {best:e} against target {target:e}")]
    Convergence { depth: usize, best: f64, target: f64 },

    #[error("assembled approximation error {measured:e} exceeds epsilon {epsilon:e}")]
    Assembly { measured: f64, epsilon: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
}
