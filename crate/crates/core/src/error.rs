use thiserror::Error;

/// Errors raised by the decision procedures and constructions of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("element {0} does not belong to the structure")]
    NotAnElement(String),
    #[error("empty input list")]
    EmptyInput,
    #[error("operands live over different coefficient semidomains")]
    BaseMismatch,
    #[error("division by zero")]
    ZeroDivisor,
    #[error("constant polynomial where a nonconstant one is required")]
    ConstantInput,
    #[error("unit input where a nonunit is required")]
    UnitInput,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid structure descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("value {0} exceeds the supported range")]
    Overflow(String),
    #[error("search exceeds the configured limit: {0}")]
    LimitExceeded(String),
    #[error("comparison undecidable at precision cap of {0} bits")]
    IndeterminateAtPrecision(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
