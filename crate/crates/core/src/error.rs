use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The deformation parameter violates a domain guard.
    #[error("{0}")]
    Domain(String),

    /// An argument lies outside the contract of the operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A power series did not reach the requested tolerance.
    #[error("series did not converge after {terms} terms (|z| = {modulus})")]
    NonConvergence { terms: usize, modulus: f64 },

    /// A value left the finite 64-bit range; use the log-scale accessor.
    #[error("overflow computing {0}")]
    Overflow(String),

    /// The tridiagonal eigensolver failed to converge.
    #[error("eigensolver failed to converge at index {0}")]
    Eigensolve(usize),

    #[error("quadrature rule with {have} nodes is too small; need at least {need}")]
    QuadratureTooSmall { have: usize, need: usize },

    #[error("unknown identity tag `{0}`")]
    UnknownTag(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
