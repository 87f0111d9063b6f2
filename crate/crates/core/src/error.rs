use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("enumeration bound {bound} exceeds budget {budget}")]
    BudgetExceeded { bound: u128, budget: u128 },
    #[error("cache does not cover genus {g} partition {alpha}")]
    CacheIncomplete { g: u32, alpha: String },
    #[error("cache format error: {0}")]
    CacheFormat(String),
    #[error("cache normalization tag {found:?} does not match {expected:?}")]
    NormalizationMismatch { found: String, expected: String },
    #[error("(g, n) = ({g}, {n}) is outside the polynomiality range")]
    InvalidRange { g: u32, n: usize },
    #[error("interpolation system is singular: {0}")]
    SingularSystem(String),
    #[error("polynomiality violated: {0}")]
    PolynomialityViolation(String),
    #[error("dimension constraint violated: {0}")]
    DimensionViolation(String),
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("series is not invertible under composition")]
    NotInvertible,
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("truncation too low: {0}")]
    TruncationTooLow(String),
    #[error("missing Witten symbols: {0}")]
    MissingWittenEntries(String),
    #[error("constant c_{0} is zero")]
    ZeroConstant(u32),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
