use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by graph construction, parameter extraction, sampling and
/// evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for a graph with {n_vertices} vertices")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },

    #[error("vertex universes differ ({left} vs {right} vertices)")]
    VertexUniverseMismatch { left: usize, right: usize },

    #[error("vertex {0} is not assigned to any block")]
    UnassignedVertex(usize),

    #[error("vertex {0} assigned to more than one cluster")]
    DuplicateAssignment(usize),

    #[error("cluster {0} is empty")]
    EmptyCluster(usize),

    #[error("graph has {n} vertices, exhaustive min-cut is limited to {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("connectivity target {k} too large for {n_vertices} vertices")]
    KTooLarge { k: usize, n_vertices: usize },

    #[error("need {k} neighbors but only {available} candidates")]
    NotEnoughCandidates { k: usize, available: usize },

    #[error("block {block}: stub count {stubs} does not match edge-count row sum {row_sum}")]
    InconsistentParams { block: usize, stubs: u64, row_sum: u64 },

    #[error("block {block}: diagonal edge count {value} is odd")]
    OddDiagonal { block: usize, value: u64 },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph has no edges")]
    NoEdges,

    #[error("statistic universes differ: {what} ({left} vs {right})")]
    UniverseMismatch {
        what: &'static str,
        left: usize,
        right: usize,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
