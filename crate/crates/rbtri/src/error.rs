//! Crate-wide error type.
//!
//! Every fallible operation in the library reports through [`Error`]; the CLI
//! maps variants onto its exit-code contract (0 ok / 1 error / 2 inconclusive).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A vertex label outside `0..n`.
    #[error("invalid vertex {vertex} (graph has {order} vertices)")]
    InvalidVertex { vertex: usize, order: usize },

    /// A precondition violation that is the caller's fault (bad k, overlapping
    /// sets, out-of-range n, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A minor witness that fails one of its structural clauses.
    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    /// A certificate file or record that does not parse or does not satisfy
    /// the coloring invariants (totality, contiguous surjective colors).
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    /// A search ran out of its node budget. `bounds` brackets the quantity
    /// being computed when the search can certify anything at all.
    #[error("budget exhausted after {spent} nodes{}", bounds_suffix(.bounds))]
    BudgetExhausted {
        spent: u64,
        bounds: Option<(u64, u64)>,
    },

    /// A class-level computation could not be completed within budget; the
    /// final answer lies in `[lo, hi]`.
    #[error("inconclusive: value lies in [{lo}, {hi}]")]
    Inconclusive { lo: u64, hi: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

fn bounds_suffix(bounds: &Option<(u64, u64)>) -> String {
    match bounds {
        Some((lo, hi)) => format!(", value in [{lo}, {hi}]"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
