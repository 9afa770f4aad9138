use thiserror::Error;

/// Errors raised by the exact-arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("incompatible ring modes: {0} vs {1}")]
    ModeMismatch(String, String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("denominator factor 1 - {0} vanishes identically")]
    ZeroDenominator(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("evaluation point violates the ring relation: coordinate product is {0}")]
    Constraint(String),
    #[error("no admissible evaluation point after {0} attempts")]
    DegeneratePoint(usize),
    #[error("cannot invert zero")]
    NotInvertible,
    #[error("empty word")]
    EmptyWord,
    #[error("repeated letter {0}")]
    RepeatedLetter(u32),
    #[error("words share the letter {0}")]
    SharedLetter(u32),
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
