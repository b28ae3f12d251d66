use thiserror::Error;

/// Errors produced by the numerical kernels and catalog constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("unknown density `{0}`")]
    UnknownDensity(String),
    #[error("invalid density parameters: {0}")]
    InvalidParameter(String),
    /// The density has no Chebyshev expansion (unbounded pdf).
    #[error("density `{0}` cannot be expanded as a Chebyshev series")]
    NotExpandable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            domain,
        }
    }
}
