use core::fmt;

/// Error type shared by all numerical modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation that only makes sense for beta > 1 was called with beta <= 1.
    SupercriticalRequired,
    /// Input outside the mathematical domain of the operation.
    DomainError(&'static str),
    /// The mixing measure at beta = 0 is a point mass; it has no density.
    DiracMeasure,
    /// Exact enumeration oracle called beyond its size cap.
    OracleScaleExceeded { n: usize, cap: usize },
    /// Dense resolvent / decomposition called beyond its size cap.
    ScaleExceeded { n: usize, cap: usize },
    /// An iterative numerical routine failed to converge.
    NumericalFailure(&'static str),
    /// Invalid or missing configuration.
    ConfigError(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SupercriticalRequired => write!(f, "operation requires beta > 1"),
            Error::DomainError(what) => write!(f, "domain error: {what}"),
            Error::DiracMeasure => write!(f, "mixing measure is a point mass (beta = 0)"),
            Error::OracleScaleExceeded { n, cap } => {
                write!(f, "exact oracle limited to n <= {cap}, got {n}")
            }
            Error::ScaleExceeded { n, cap } => {
                write!(f, "dense operation limited to n <= {cap}, got {n}")
            }
            Error::NumericalFailure(what) => write!(f, "numerical failure: {what}"),
            Error::ConfigError(what) => write!(f, "config error: {what}"),
        }
    }
}

impl core::error::Error for Error {}
