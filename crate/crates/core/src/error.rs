use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not one of the twelve signed group elements")]
    NotAGroupElement,

    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix exponential overflowed (input 1-norm {norm:e})")]
    Overflow { norm: f64 },

    #[error("matrix is singular to working precision")]
    Singular,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
