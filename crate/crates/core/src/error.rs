use thiserror::Error;

use crate::laurent::NotDivisible;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Cartan type: {0}")]
    InvalidCartanType(String),
    #[error("root system is not of finite type (exceeded bound {bound})")]
    InfiniteType { bound: usize },
    #[error("invalid diagram automorphism: {0}")]
    InvalidEps(String),
    #[error("character map is incompatible with the diagram automorphism: {0}")]
    IncompatibleTwist(String),
    #[error(transparent)]
    NotDivisible(#[from] NotDivisible),
    #[error("elements belong to different algebra contexts")]
    ContextMismatch,
    #[error("element is not in the reflection subgroup")]
    NotInSubgroup,
    #[error("element is not in the twisted subspace H_D")]
    NotInHD,
    #[error("subset is not stable under the diagram automorphism")]
    NotEpsStable,
    #[error("invalid subset of simple reflections: {0}")]
    InvalidSubset(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
