use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lowest nonzero coefficient {coefficient} at q^{exponent} is not a unit")]
    LowestCoefficientNotUnit { exponent: i64, coefficient: BigInt },

    #[error("series is zero on its whole precision window")]
    ZeroSeries,

    #[error("cannot invert an exact series without a truncation order")]
    UnboundedPrecision,

    #[error("nonzero coefficient {coefficient} at negative exponent q^{exponent}")]
    NegativeExponentResidue { exponent: i64, coefficient: BigInt },

    #[error("window up to q^{requested} exceeds available precision {available}")]
    InsufficientPrecision { requested: i64, available: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported matrix kind {kind} for family {family}")]
    UnsupportedKind {
        kind: &'static str,
        family: &'static str,
    },

    #[error(
        "h-iteration did not stabilize: iterates {j_prev} and {j_last} differ at q^{exponent}"
    )]
    StabilizationFailure {
        j_prev: i64,
        j_last: i64,
        exponent: i64,
    },

    #[error("infinite product has unboundedly many factors below q^{order}")]
    DivergentProduct { order: i64 },

    #[error("{what} disagree at q^{exponent}")]
    Disagreement { what: &'static str, exponent: i64 },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
