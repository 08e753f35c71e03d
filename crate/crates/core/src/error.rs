use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at s = {0}")]
    Pole(String),
}

/// Usage errors raised inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("family mismatch: {0} vs {1}")]
    FamilyMismatch(&'static str, &'static str),
    #[error("tensor arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("element is not homogeneous in parity")]
    NotHomogeneous,
    #[error("mode index {mode} out of range 1..={n}")]
    ModeOutOfRange { mode: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("oscillator construction failed: {0}")]
    Construction(String),
}
