use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max |M - M†| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("trace is not 1 (got {trace})")]
    InvalidTrace { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("Pauli index must be 1, 2 or 3 (got {0})")]
    PauliIndex(usize),

    #[error("evolution time must be finite and nonnegative (got {0})")]
    NegativeTime(f64),

    #[error("probe vector is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("matrix is not unitary (max |U†U - 1| = {0:e})")]
    NotUnitary(f64),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("singular matrix in linear solve")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
