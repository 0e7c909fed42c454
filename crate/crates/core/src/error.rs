use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands do not live in the same structure (rank, group or arity mismatch).
    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("validation failed: {0}")]
    Validation(String),

    /// A configured search or enumeration limit would be exceeded.
    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: String, limit: u64 },

    #[error("time budget exhausted during {0}")]
    Budget(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A symbolic or combinatorial verification did not hold.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, limit: u64) -> Self {
        Error::Capacity {
            what: what.into(),
            limit,
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
