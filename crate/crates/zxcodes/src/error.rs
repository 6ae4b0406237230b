//! Error type shared across the crate.
//!
//! Errors split into two classes: domain errors (violated preconditions,
//! invalid encoders, oracle budgets) and I/O or parse errors. The CLI maps
//! the former to exit code 1 and the latter to exit code 2.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operand length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("qubit index {index} out of range for {len} qubits")]
    QubitOutOfRange { index: usize, len: usize },

    #[error("wire index {index} out of range ({len} wires)")]
    WireOutOfRange { index: usize, len: usize },

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("not a graph-like diagram: {0}")]
    GraphLike(String),

    #[error("rewrite precondition failed: {0}")]
    RewritePrecondition(String),

    #[error("invalid encoder: {0}")]
    InvalidEncoder(String),

    #[error("invalid stabilizer code: {0}")]
    InvalidCode(String),

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("unknown catalog name: {0}")]
    UnknownCatalog(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Exit code the CLI should report for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) | Error::Json(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
