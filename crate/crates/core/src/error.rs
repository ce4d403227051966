//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input shapes or lengths do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The input admits no meaningful answer (e.g. an all-zero matrix).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// An index array is not a bijection.
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    /// Exhaustive enumeration refused: the instance is too large.
    #[error("matrix order {n} exceeds exhaustive-search limit {limit}")]
    ExhaustiveLimit { n: usize, limit: usize },

    /// Exact automorphism counting refused above the configured cap.
    #[error("automorphism count infeasible for order {n} (cap {cap})")]
    InfeasibleSize { n: usize, cap: usize },

    /// Transmit set and secret do not come from the same obfuscation.
    #[error("transmit/secret mismatch: {0}")]
    SecretMismatch(String),

    /// The peer answered with a protocol-level error frame.
    #[error("protocol error [{code}]: {message}")]
    Protocol { code: String, message: String },

    /// A frame on the wire could not be parsed.
    #[error("malformed frame: {0}")]
    Frame(String),

    #[error("transport: {0}")]
    Transport(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code for CLI/stderr reporting.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::DegenerateInput(_) => "degenerate_input",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::ExhaustiveLimit { .. } => "exhaustive_limit",
            Error::InfeasibleSize { .. } => "infeasible_size",
            Error::SecretMismatch(_) => "secret_mismatch",
            Error::Protocol { .. } => "protocol_error",
            Error::Frame(_) => "malformed_frame",
            Error::Transport(_) => "transport",
            Error::Json(_) => "serialization",
        }
    }
}
