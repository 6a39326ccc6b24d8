//! Low-dimensional cube representations of simple graphs.
//!
//! A graph has a `d`-dimensional cube representation when it is the
//! intersection of `d` unit interval graphs. This crate constructs such
//! representations from a degeneracy ordering, either deterministically
//! (a staged coloring procedure with an `8k'(⌈2.42 ln n⌉ + 1)` dimension
//! guarantee) or as a Las Vegas randomized procedure with `(k+2)⌈2e ln n⌉`
//! dimensions, and verifies every representation it emits.
//!
//! Around that core sit:
//!
//! * [`oracle`] — brute-force ground truth (exact cubicity/boxicity for
//!   tiny graphs, unit interval recognition) used by the test suites;
//! * [`crossing`] — crossing-number based boxicity/cubicity bounds and the
//!   constructive clique/stable-set decomposition behind them;
//! * [`randlab`] — seeded random graph generators and desk-scale
//!   degeneracy/cubicity experiments;
//! * [`io`] — graph file parsing (edge list, DIMACS) and exact JSON
//!   emission of representations, bounds and experiment results.

pub mod builder;
pub mod coloring;
pub mod crossing;
pub mod graph;
pub mod io;
pub mod numeric;
pub mod oracle;
pub mod randlab;
pub mod rng;

pub use builder::{
    build_dimension, construct_cub_rep, extend_with_universal, prune_dimensions,
    verify_representation, BuildMode, CubeRepresentation, Interval, IntervalRep,
    VerificationReport,
};
pub use coloring::{
    check_family, construct_coloring, favorably_colored, random_coloring_family, Coloring,
    ColoringFamily, NonEdgeState, Provenance,
};
pub use graph::{degeneracy_order, DegeneracyOrder, Graph, OrderedGraph, SupportKind, SupportSet};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Structurally invalid graph input (self-loop, vertex out of range, ...).
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// An operation was called outside its contract.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A guaranteed internal invariant failed; this signals a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    /// The Las Vegas redraw loop exhausted its attempt budget.
    #[error("random family rejected after {attempts} attempts (seed {seed}): {uncovered} non-edges still uncovered")]
    AttemptsExceeded {
        seed: u64,
        attempts: u32,
        uncovered: usize,
    },

    /// Input exceeds a hard size cap (exponential-cost oracle operations).
    #[error("input size {n} exceeds cap {cap}: {what}")]
    SizeCap { what: String, n: usize, cap: usize },

    /// Text input could not be parsed.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
