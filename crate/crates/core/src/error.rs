use thiserror::Error;

use crate::kronecker::Decomposition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("representations live over different quivers")]
    QuiverMismatch,
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("unknown vertex or arrow `{0}`")]
    UnknownName(String),
    #[error("not a morphism: square for arrow `{0}` does not commute")]
    NotMorphism(String),
    #[error("subspaces are not closed under the arrow `{0}`")]
    NotSubrepresentation(String),
    #[error("field with {size} elements is too small for {needed} interpolation nodes")]
    FieldTooSmall { size: u64, needed: usize },
    #[error("the zero polynomial has no well-defined root set")]
    ZeroPolynomial,
    #[error("parameter {0} does not lie in the base field")]
    ParameterNotInField(String),
    #[error("decomposition does not account for the whole dimension vector (found {found})")]
    IncompleteFactorization { found: Box<Decomposition> },
    #[error("closure exceeded the budget of {budget} objects")]
    BudgetExceeded { budget: usize, separated: bool },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("the operation requires the Kronecker quiver")]
    NotKronecker,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid document: {0}")]
    Schema(String),
    #[error("cannot factor integer {0} by trial division")]
    Factorization(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}
