use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("gram matrix has odd diagonal entry at position {0}")]
    NotEven(usize),
    #[error("gram matrix is degenerate (determinant 0)")]
    Degenerate,
    #[error("genus must be at least 2, got {0}")]
    BadGenus(i64),
    #[error("scale must be at least 1, got {0}")]
    BadScale(i64),
    #[error("unknown lattice name `{0}`")]
    UnknownLattice(String),
    #[error("denominator must be odd, got {0}")]
    EvenDenominator(i64),
    #[error("denominator must be positive, got {0}")]
    NonpositiveDenominator(i64),
    #[error("discriminant group of order {size} exceeds the cap {cap}")]
    TooLarge { size: u128, cap: u128 },
    #[error("value {value} is not within {tol:e} of {target}")]
    SnapFailure {
        value: String,
        target: String,
        tol: f64,
    },
    #[error("weight {0} is too small; the dimension formula needs k > 2")]
    WeightTooSmall(String),
    #[error("weight must be a half-integer, got {0}")]
    BadWeight(String),
    #[error("lattice signature ({0}, {1}) has no part of size 2")]
    BadSignature(usize, usize),
    #[error("the U + U(N) splitting hypothesis was not asserted for this lattice")]
    HypothesisNotAsserted,
    #[error("Δ = {0} is negative: not a Noether-Lefschetz divisor")]
    NegativeDiscriminant(i64),
    #[error("closed-form rank for genus {g} evaluated to the non-integer {value}")]
    NonIntegerResult { g: i64, value: String },
    #[error("invalid range {lo}..={hi}")]
    BadRange { lo: i64, hi: i64 },
    #[error("unknown rank route `{0}`")]
    UnknownRoute(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
