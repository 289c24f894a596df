use alloc::string::String;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Integration bounds are empty or reversed.
    #[error("invalid integration domain: {0}")]
    InvalidDomain(String),
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An iteration or quadrature hit its cap before meeting its tolerance.
    #[error("no convergence: {0}")]
    NonConvergence(String),
    /// An integrand or intermediate produced NaN or infinity.
    #[error("non-finite value: {0}")]
    NonFinite(String),
    /// A result violated a structural expectation (for instance a vanishing denominator).
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    /// A decimal literal could not be parsed.
    #[error("cannot parse {0:?} as a real number")]
    Parse(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! domain_err {
    ($($arg:tt)*) => {
        $crate::error::Error::Domain(alloc::format!($($arg)*))
    };
}
pub(crate) use domain_err;
