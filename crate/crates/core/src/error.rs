use thiserror::Error;

/// Errors raised by region computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A covariance matrix violates the uncertainty principle.
    #[error("unphysical state: {0}")]
    Unphysical(String),

    /// A quantity that is finite only for some parameters was requested where it diverges.
    #[error("unbounded: {0}")]
    Unbounded(String),

    /// Two regions or slices do not share axes.
    #[error("axis mismatch: ({0}, {1}) vs ({2}, {3})")]
    AxisMismatch(String, String, String, String),

    /// A mathematical identity failed to hold numerically.
    #[error("numerical inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
