use std::fmt;

/// Error type shared by every solver in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Flux parameters violate their invariants (gamma <= 1, negative eps, ...).
    Params(String),
    /// Riemann data is inadmissible for the requested system.
    Data(String),
    /// An operation was evaluated outside its domain (e.g. rho below the density floor).
    Domain(String),
    /// Quadrature or root finding failed to converge.
    Numerics(String),
    /// An operation was called on inputs its contract excludes.
    Contract(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Params(msg) => write!(f, "invalid parameters: {msg}"),
            Error::Data(msg) => write!(f, "inadmissible Riemann data: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Numerics(msg) => write!(f, "numerical error: {msg}"),
            Error::Contract(msg) => write!(f, "contract violation: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
