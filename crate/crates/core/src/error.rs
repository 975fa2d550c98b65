use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different base fields")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field of size {size} exceeds the configured budget {cap}")]
    FieldTooLarge { size: u128, cap: u64 },
    #[error("modulus must be a nonconstant polynomial")]
    ConstantModulus,
    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("extension is not geometric: {0}")]
    NotGeometric(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("step cap of {0} exceeded")]
    StepCapExceeded(usize),
    #[error("degree cap {0} exceeded without a hit")]
    DegreeCapExceeded(usize),
    #[error("internal check failed: {0}")]
    CheckFailed(String),
    #[error("radicands {0} and {1} differ")]
    RadicandMismatch(u64, u64),
}

impl Error {
    /// True for errors caused by inputs outside the supported hypotheses,
    /// as opposed to failed internal consistency checks.
    pub fn is_hypothesis_violation(&self) -> bool {
        !matches!(self, Error::CheckFailed(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
