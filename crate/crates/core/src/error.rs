use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

/// A broken [`TopoGraph`](crate::TopoGraph) invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("dangling-reference: edge `{edge}` references missing vertex `{vertex}`")]
    DanglingReference { edge: EdgeId, vertex: VertexId },
    #[error("negative-circles: circle count is {0}")]
    NegativeCircles(i64),
    #[error("duplicate-vertex: vertex `{0}` declared twice")]
    DuplicateVertex(VertexId),
    #[error("duplicate-edge: edge `{0}` declared twice")]
    DuplicateEdge(EdgeId),
}

impl Violation {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::DanglingReference { .. } => "dangling-reference",
            Violation::NegativeCircles(_) => "negative-circles",
            Violation::DuplicateVertex(_) => "duplicate-vertex",
            Violation::DuplicateEdge(_) => "duplicate-edge",
        }
    }
}

/// Domain errors raised by graph operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopoError {
    #[error("invalid graph: {0}")]
    Invalid(#[from] Violation),
    #[error("unknown edge `{0}`")]
    UnknownEdge(EdgeId),
    #[error("invalid point class: {0}")]
    InvalidPoint(String),
    #[error("the two points must be distinct")]
    SamePoint,
    #[error("non-compact input")]
    NonCompact,
    #[error("compact input: the space has no remainder to compactify")]
    Compact,
    #[error("too few points: the space needs at least 3 points, it has {0}")]
    TooFewPoints(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("N-star size {requested} out of range 1..={max}")]
    NStarOutOfRange { requested: usize, max: usize },
}
