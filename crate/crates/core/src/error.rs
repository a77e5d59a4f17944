use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid rank: {0}")]
    InvalidRank(String),
    #[error("maximal root: {0}")]
    MaximalRoot(String),
    #[error("not in the Lie algebra: {0}")]
    NotInLieAlgebra(String),
    #[error("singular gauge: {0}")]
    SingularGauge(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("reduction did not terminate: {0}")]
    NonTermination(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
