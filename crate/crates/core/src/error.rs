use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("enumeration budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded { what: String, needed: String, budget: u64 },
    #[error("operands live in different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd(m, q) must be 1, got m = {m}, q = {q}")]
    NotCoprime { m: usize, q: u64 },
    #[error("element is not in the requested subfield")]
    NotInSubfield,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("constituent {index}: {reason}")]
    Constituent { index: usize, reason: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn budget_err(what: impl Into<String>, needed: impl ToString, budget: u64) -> Error {
    Error::BudgetExceeded { what: what.into(), needed: needed.to_string(), budget }
}
