//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown qubit label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate qubit label `{0}`")]
    DuplicateLabel(String),

    #[error("statevector capped at 16 qubits, requested {0}")]
    TooManyQubits(usize),

    #[error("invalid code `{name}`: {reason}")]
    InvalidCode { name: String, reason: String },

    #[error("state is not a ±1 eigenstate of `{operator}` (expectation {value})")]
    NotEigenstate { operator: String, value: f64 },

    #[error("no correction known for syndrome {syndrome:?}")]
    Uncorrectable { syndrome: Vec<u8> },

    #[error("invalid support mask: {0}")]
    InvalidMask(String),

    #[error("no weight-q mask splits the codeword support")]
    NoSplit,

    #[error("secret readout failed: {0}")]
    DecodeFailure(String),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}
