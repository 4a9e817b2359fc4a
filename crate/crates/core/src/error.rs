use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree {0} is not supported (only 1 and 2)")]
    UnsupportedDegree(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("form is degenerate (rank {rank} < {n})")]
    Degenerate { rank: usize, n: usize },
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded: {what} needs {required}, budget is {budget}")]
    BudgetExceeded { what: String, required: u128, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
