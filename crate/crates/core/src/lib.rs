//! Influential-spreader analysis for undirected networks.
//!
//! The crate builds compact immutable graphs from edge-list files and provides
//! three groups of functionality on top of them:
//!
//! - **Centrality measures** ([`centrality`], [`emh`]): degree, k-shell,
//!   H-index, neighborhood coreness, weighted neighborhood centrality,
//!   gravity-style measures, weighted k-shell degree, and the mixing
//!   H-index family (`IH` → `MC` → `IMH` → `EMH`) built from
//!   neighbor-diversity.
//! - **Spreading ground truth** ([`sir`]): seeded, reproducible Monte Carlo
//!   SIR simulation that scores every node by its mean final outbreak size.
//! - **Ranking quality** ([`eval`]): Kendall rank correlation against the
//!   simulated spread, monotonicity of a ranking, averaged correlation over
//!   an infection-rate sweep, and pairwise improvement percentages.
//!
//! All real-valued computations are generic over the scalar type through the
//! [`Scalar`] trait; [`Score`] fixes the default precision used by the CLI.

pub mod centrality;
pub mod emh;
pub mod eval;
pub mod graph;
pub mod io;
pub mod scalar;
pub mod sir;

#[cfg(test)]
pub(crate) mod testutil;

pub use centrality::{Measure, ScoreVector};
pub use graph::{Graph, GraphStats, NodeId, ParseOptions, ParseWarnings};
pub use scalar::Scalar;

use thiserror::Error;

/// Default scalar type for scores and metrics.
pub type Score = f64;

/// [`ScoreVector`] at the default precision.
pub type ScoreVec = ScoreVector<Score>;

/// [`emh::EmhTrace`] at the default precision.
pub type Trace = emh::EmhTrace<Score>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: expected 2 tokens, found {found}")]
    MalformedLine { line: usize, found: usize },

    #[error("no edges")]
    NoEdges,

    #[error("node index {index} out of range for graph with {count} nodes")]
    IndexOutOfRange { index: NodeId, count: usize },

    #[error("vector length {got} does not match node count {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("graph has no edges: {context} is undefined")]
    EmptyEdgeSet { context: &'static str },

    #[error("graph needs at least {min} nodes, found {got}")]
    TooFewNodes { min: usize, got: usize },

    #[error("invalid parameter {name}={value}: must satisfy {constraint}")]
    InvalidParam {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("degenerate degree distribution: {0}")]
    DegenerateDegrees(&'static str),

    #[error("infection rate grid point {beta} exceeds 1")]
    BetaOutOfRange { beta: f64 },

    #[error("score vectors contain a non-finite value")]
    NonFiniteScore,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
