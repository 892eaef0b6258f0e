use std::io;

use thiserror::Error;

/// Errors produced by graph loading, partitioning, metrics and walks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no edges")]
    EmptyInput,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("seed selection failed: requested {requested} pairwise non-adjacent seeds, found only {found}")]
    SeedSelection { requested: usize, found: usize },

    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("graph has no edges")]
    NoEdges,

    #[error("vertex {0} has no neighbors")]
    IsolatedVertex(u32),

    #[error("empty segment pool")]
    EmptyPool,

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
