use std::time::Duration;

use thiserror::Error;

/// Everything that can go wrong while building, checking or solving a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("hypergraph has no vertices")]
    EmptyVertexSet,
    #[error("vertex {index} has {found} coordinates, expected {expected}")]
    CoordinateLength { index: usize, expected: usize, found: usize },
    #[error("vertex {index} has a coordinate outside its allowed range")]
    CoordinateOutOfRange { index: usize },
    #[error("vertex {index} duplicates an earlier vertex")]
    DuplicateVertex { index: usize },
    #[error("edge references vertex {index}, but there are only {len} vertices")]
    VertexIndexOutOfRange { index: usize, len: usize },
    #[error("edge {edge:?} repeats a vertex")]
    RepeatedVertexInEdge { edge: Vec<usize> },
    #[error("edge {edge:?} has fewer than 2 vertices")]
    EdgeTooSmall { edge: Vec<usize> },
    #[error("partition covers {found} vertices, hypergraph has {expected}")]
    PartitionMismatch { expected: usize, found: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("class count must be at least 1")]
    InvalidClassCount,
    #[error("invalid dimensions {dims:?}: {reason}")]
    InvalidDims { dims: Vec<usize>, reason: String },
    #[error("invalid spectrum target: {0}")]
    InvalidTarget(String),
    #[error("axis {axis} out of range 1..={dims}")]
    AxisOutOfRange { axis: usize, dims: usize },
    #[error("{what}: {size} vertices exceeds the cap of {cap}")]
    VertexCapExceeded { what: &'static str, size: usize, cap: usize },
    #[error(
        "time budget of {budget:?} exhausted after {nodes} search nodes ({solutions} solutions so far); no result reported"
    )]
    TimeBudgetExceeded { budget: Duration, nodes: u64, solutions: u64 },
    #[error("isomorphism search gave up after {steps} steps")]
    StepBudgetExceeded { steps: u64 },
    #[error("partition count overflowed a 64-bit counter")]
    CountOverflow,
    #[error("hypergraph has no strict coloring")]
    NoStrictColoring,
    #[error("malformed hypergraph JSON: {0}")]
    Json(String),
}

impl Error {
    /// Errors caused by a configured cap or budget rather than bad input.
    pub fn is_cap_abort(&self) -> bool {
        matches!(
            self,
            Error::VertexCapExceeded { .. }
                | Error::TimeBudgetExceeded { .. }
                | Error::StepBudgetExceeded { .. }
                | Error::CountOverflow
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
