//! Exact computation and verification engine for rainbow numbers of
//! matchings in plane triangulations.
//!
//! The crate provides small-order graph primitives on bitset adjacency,
//! combinatorial embedding and planarity testing, exhaustive generation of
//! plane triangulations up to isomorphism, matching theory (blossom solver,
//! deficiency decompositions), edge-coloring search engines that compute
//! anti-Ramsey thresholds exactly, and checkable audit reports for the
//! structural facts those engines rely on. Everything is deterministic:
//! fixed iteration orders, canonical forms, and explicit node budgets.

pub mod anti_ramsey;
pub mod cli;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod matching;
pub mod planarity;
pub mod proof_check;
pub mod rainbow;
pub mod store;
pub mod triangulation;

pub use error::{Error, Result};
