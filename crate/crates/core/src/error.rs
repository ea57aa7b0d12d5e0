use thiserror::Error;

/// Errors reported by the toolkit. Every variant describes a condition the
/// caller can act on; internal invariant violations use [`Error::Internal`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("singular model (discriminant is zero)")]
    Singular,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("elements belong to different fields")]
    MismatchedFields,

    #[error("defining polynomial rejected: {0}")]
    InvalidField(String),

    #[error("prime {p} is ramified (divides the discriminant of the defining polynomial)")]
    Ramified { p: u64 },

    #[error("defining polynomial has no root modulo {p}")]
    NoRootModP { p: u64 },

    #[error("bad reduction at {p}")]
    BadReduction { p: u64 },

    #[error("coefficients are not integral at {p}")]
    NotIntegral { p: u64 },

    #[error("prime {p} is too large for naive point counting")]
    PrimeTooLarge { p: u64 },

    #[error("no usable reduction primes below {cap}")]
    NoUsablePrimes { cap: u64 },

    #[error("dimension {0} exceeds the supported maximum of 8")]
    DimensionTooLarge(usize),

    #[error("unknown curve label {0:?}")]
    UnknownLabel(String),

    #[error("inadmissible parameter for family {family}: {reason}")]
    Inadmissible { family: String, reason: String },

    #[error("2-division polynomial is reducible over Q")]
    ReducibleCubic,

    #[error("curve database: {0}")]
    Database(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
