use thiserror::Error;

/// Errors raised anywhere in the evaluation and verification pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid precision: {0}")]
    Precision(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("invalid integral spec: {0}")]
    InvalidSpec(String),

    #[error("quadrature did not converge after {levels} levels (error estimate {estimate})")]
    NonConvergence { levels: u32, estimate: String },

    #[error("integrand failed at x = {at}: {reason}")]
    IntegrandFailure { at: String, reason: String },

    #[error("unsupported singular value index r = {0}")]
    UnsupportedSingularValue(u32),

    #[error("termwise mismatch at n = {n}: residual {residual}")]
    Inconsistency { n: u32, residual: String },

    #[error("finite-difference stencil leaves the valid region: {0}")]
    Stencil(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("parameter out of domain: {0}")]
    OutOfDomain(String),

    #[error("nothing to export")]
    EmptyInput,
}

pub type Result<T> = std::result::Result<T, Error>;
