//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while building or checking a structure.
#[derive(Debug, Error)]
pub enum Error {
    /// Shape mismatch in a matrix or operator computation.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A generating set failed an exact linear-independence check.
    #[error("rank deficient: rank {rank}, expected {expected} ({context})")]
    RankDeficient {
        rank: usize,
        expected: usize,
        context: String,
    },

    /// A bracket left the span of the proposed basis.
    #[error("span not closed under bracket at basis pair ({a}, {b})")]
    NotClosed { a: usize, b: usize },

    /// A value that must be real had a nonzero imaginary part.
    #[error("nonzero imaginary part at {0}")]
    NonReal(String),

    /// Invalid argument at the API boundary (bad m, bad mode, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A bilinear form required to be nondegenerate has a radical.
    #[error("degenerate form: {0}")]
    Degenerate(String),

    /// Ricci is not proportional to the supplied metric.
    #[error("not Einstein: Ric - lambda*g is nonzero at entry ({row}, {col}) for every candidate lambda")]
    NotEinstein { row: usize, col: usize },

    /// An induced structure failed its defining relations.
    #[error("construction failed: {0}")]
    Construction(String),

    /// Malformed serialized scalar or fixture.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
