use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("invalid symmetric pair: {0}")]
    InvalidPair(String),

    #[error("not diagonalizable over the rationals: {0}")]
    NotDiagonalizable(String),

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("degree {degree} exceeds bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("enumeration budget exceeded: n = {0} is too large")]
    TooLarge(usize),

    #[error("unexpected terms in rewriting result: {0}")]
    UnexpectedTerms(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
