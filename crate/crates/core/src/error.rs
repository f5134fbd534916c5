//! Crate-wide error type.
//!
//! Errors fall into three classes that callers (in particular the CLI) treat
//! differently: bad user input, evaluation at a genuine singularity of a
//! formula, and internal invariant violations that indicate a bug.

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The caller supplied inconsistent or out-of-range data.
    #[error("input error: {0}")]
    Input(String),

    /// A formula was evaluated at a point where it is singular.
    #[error("singularity: {0}")]
    Singularity(String),

    /// An invariant that should hold by construction failed.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
