use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("group inverse does not exist (rank(A) != rank(A^2))")]
    GroupInverseDoesNotExist,
    #[error("verification failed: {0}")]
    VerificationFailure(String),
    #[error("{theorem}: hypothesis violated: {hypothesis}")]
    HypothesisViolated { theorem: String, hypothesis: String },
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal defect: {0}")]
    Defect(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
