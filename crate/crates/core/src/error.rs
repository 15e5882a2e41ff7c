use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{degree} exceeds the enumeration cap of 2^20 elements")]
    FieldTooLarge { p: u64, degree: u64 },
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element encoding {0} is out of range for the field")]
    BadEncoding(u64),
    #[error("singular Weierstrass equation: discriminant is zero")]
    SingularCurve,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("invalid closed point: {0}")]
    InvalidPoint(String),
    #[error("operation requires an elliptic curve")]
    NotElliptic,
    #[error("zero function has no valuation")]
    ZeroFunction,
    #[error("function has a pole at the point")]
    Pole,
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("operation not available for this surface variant: {0}")]
    WrongVariant(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degE - s_a = {0} is odd; Segre invariants must have the parity of deg E")]
    Parity(i64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("fiber over base point {0} has restriction rank below a+1")]
    RankDeficient(usize),
    #[error("helper column {0} is erased")]
    ErasedHelper(usize),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
