//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated an operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A checked internal invariant failed; results would be meaningless.
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// A graph file did not conform to the `plngraph v1` format.
    #[error("graph format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
