use thiserror::Error;

/// Errors raised anywhere in the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Operand dimensions do not fit the operation.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A numeric argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The caller combined otherwise valid values in an unsupported way.
    #[error("usage error: {0}")]
    Usage(String),

    /// Pulse-program text failed to parse.
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    /// A preparation stage did not produce its target state under the
    /// configured sign conventions.
    #[error("convention error: {0} (see the conventions section of the README)")]
    Convention(String),

    /// Consecutive path samples are too far apart for a discrete phase.
    #[error("sampling density too low: {0}; refine the path")]
    Sampling(String),
}

pub type Result<T> = std::result::Result<T, Error>;
