use thiserror::Error;

/// Errors raised by the algebra, Gröbner, and integrability layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic must be 0 or prime, got {0}")]
    NotPrime(u64),

    #[error("prime {0} is too large (must be below 65536)")]
    PrimeTooLarge(u64),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("{what} exceeded its budget of {limit} steps")]
    BudgetExceeded { what: &'static str, limit: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("algebra is not artinian (infinite staircase)")]
    NotArtinian,

    #[error("algebra is not local with maximal ideal generated by the variables")]
    NotLocal,

    #[error("{0} is a zero divisor modulo the ideal")]
    ZeroDivisor(String),

    #[error("J^het condition fails at prime #{prime}")]
    JhetFails { prime: usize },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;
