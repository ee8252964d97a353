use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("invalid simplex map: {0}")]
    InvalidMap(String),

    #[error("insufficient truncation: need level {needed}, have {available}")]
    InsufficientTruncation { needed: usize, available: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid simplicial set: {0}")]
    InvalidSimplicialSet(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("relation is not a congruence: {0}")]
    NotCongruence(String),

    #[error("unknown object {0}")]
    UnknownObject(usize),

    #[error("input is not a Segal space: {0}")]
    NotSegal(String),

    #[error("input is not level-wise fibrant: {0}")]
    NotFibrant(String),

    #[error("square does not commute: {0}")]
    NonCommutingSquare(String),

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("ill-defined construction: {0}")]
    IllDefined(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
