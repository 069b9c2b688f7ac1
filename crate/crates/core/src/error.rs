use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("SVD did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("condition number is undefined for the zero matrix")]
    ZeroMatrix,

    #[error("matrix is not Hermitian positive definite")]
    NotPositiveDefinite,

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for failures of the numerical machinery itself, as opposed to bad input.
    pub fn is_numeric_failure(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::NotPositiveDefinite
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
