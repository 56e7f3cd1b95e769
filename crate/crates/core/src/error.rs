use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different backends")]
    BackendMismatch,
    #[error("denominator vanishes at the supplied value of Z")]
    PoleAtZ,
    #[error("tolerance must be positive")]
    ToleranceNotPositive,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("exact division left a nonzero remainder: {0}")]
    ExactDivisionFailed(String),
    #[error("singular Gram system at n = {n}")]
    SingularGram { n: usize },
    #[error("connection determinant vanishes identically at n = {n}")]
    DegenerateConnection { n: usize },
    #[error("auxiliary function undefined: {0}")]
    UndefinedAuxiliary(String),
    #[error("Xi coefficient vanishes identically at n = {n}, ell = {ell}")]
    DegenerateXi { n: usize, ell: i8 },
    #[error("recurrence coefficient vanishes identically at n = {n}, ell = {ell}")]
    DegenerateTtrr { n: usize, ell: i8 },
    #[error("continued fraction tail vanishes at depth {0}")]
    ZeroTailDenominator(usize),
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
