//! Shared error type. Parameter, domain, and numeric failures are kept in
//! separate variants so callers can map them to distinct exit paths.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A constructor or operation received a value outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An evaluation point lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A Gamma-function closed form left the representable range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The symmetric eigen stage of a quadrature rule did not converge or
    /// produced an inadmissible rule.
    #[error("eigen stage failed: {0}")]
    EigenFailure(String),

    /// An integrand evaluated to a non-finite value at a node or grid point.
    #[error("non-finite integrand: {0}")]
    NonFiniteIntegrand(String),

    /// Sequence and operator lengths are incompatible.
    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    /// An experiment or run configuration violates a hard requirement.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A descriptor or input file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
