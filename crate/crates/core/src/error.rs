use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degrees ({l1}, {l2}, {l}) violate the triangle condition |l1-l2| <= l <= l1+l2")]
    Triangle { l1: usize, l2: usize, l: usize },

    #[error("degree {degree} out of range for bandlimit {bandlimit}")]
    DegreeOutOfRange { degree: usize, bandlimit: usize },

    #[error("bandlimit mismatch: expected {expected}, found {found}")]
    BandlimitMismatch { expected: usize, found: usize },

    #[error("grid bandlimit {grid} is smaller than signal bandlimit {signal}")]
    GridTooSmall { grid: usize, signal: usize },

    #[error("sample count {found} does not match grid ({expected} samples)")]
    SampleCount { expected: usize, found: usize },

    #[error("signal type mismatch: {0}")]
    TypeMismatch(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("filter is not axisymmetric (coefficient at degree {degree}, order {order} is nonzero)")]
    NotAxisymmetric { degree: usize, order: i64 },

    #[error("reference signal has zero norm")]
    ZeroNorm,

    #[error("normalization statistic must be positive, found {0}")]
    NonPositiveStatistic(f64),

    #[error("unsupported signal type for this operator: {0}")]
    UnsupportedType(String),

    #[error("invalid mixing pair ({l1}, {l2}) at degree {l}: {reason}")]
    InvalidPair {
        l1: usize,
        l2: usize,
        l: usize,
        reason: String,
    },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
