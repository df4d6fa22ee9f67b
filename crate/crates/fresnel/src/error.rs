use thiserror::Error;

/// Errors produced by the evaluation kernels, the planner, and the oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FresnelError {
    /// An argument fell outside an operation's stated domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// NaN or infinite input where a finite real is required.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Requested target accuracy outside the supported planner range.
    #[error("target accuracy {0:e} outside supported range [2^-75, 1e-2]")]
    EpsOutOfRange(f64),

    /// The oracle failed to reach its internal agreement tolerance.
    #[error("oracle did not converge: {0}")]
    OracleConvergence(String),
}

pub type Result<T> = std::result::Result<T, FresnelError>;
