use thiserror::Error;

use crate::lattice::Int;

/// Errors raised by the library.
///
/// Rejections of a certification request are not errors; they are reported
/// through [`crate::certifier::Verdict::Rejected`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("{0} is not in the semigroup generated by the weights")]
    NotInSemigroup(Int),
    #[error("no relation of width < 1 between the weights")]
    NoRelation,
    #[error("criterion is not stable across scales: {0}")]
    Stability(String),
    #[error("value out of range for enumeration: {0}")]
    Overflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
