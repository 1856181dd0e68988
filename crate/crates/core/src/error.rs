use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not nilpotent (M^{0} != 0)")]
    NotNilpotent(usize),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is invertible over the rational functions but its inverse is not Laurent (determinant {0})")]
    NotLaurentInvertible(String),

    #[error("gauge matrix must be diagonal with nonzero monomial entries: {0}")]
    InvalidGauge(String),

    #[error("entry ({row}, {col}) is not a monomial in x")]
    NonMonomial { row: usize, col: usize },

    #[error(
        "pole of order {order} along x = 0 at entry ({row}, {col}); a logarithmic pole is required"
    )]
    PoleOrder { row: usize, col: usize, order: i32 },

    #[error("basis {basis} is not supported here: {reason}")]
    UnsupportedBasis { basis: String, reason: String },

    #[error("basis mismatch: connection in {connection}, pairing in {pairing}")]
    BasisMismatch { connection: String, pairing: String },

    #[error("basis derivation failed: {0}")]
    DerivationFailed(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}
