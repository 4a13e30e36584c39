use thiserror::Error;

/// Errors produced by graph parsing, the enumerators and the geometry engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what}: size {actual} exceeds the configured limit {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("input points are affinely dependent")]
    Degenerate,

    #[error("cannot contract loop edge {0}")]
    ContractLoop(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A structural invariant failed; this points at a bug or a non-good triangulation.
    #[error("internal consistency violation: {0}")]
    Internal(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
