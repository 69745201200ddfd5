use thiserror::Error;

use crate::series::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series variable mismatch: {0} vs {1}")]
    VarMismatch(Var, Var),
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstant,
    #[error("coefficient is not a unit of the ring: {0}")]
    NotInvertible(String),
    #[error("series is not divisible by the leading power of the divisor")]
    NotDivisible,
    #[error("λ₂ must be nonzero")]
    ZeroLambda2,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
