use thiserror::Error;

use crate::graph::{Edge, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("merging would create a multi-edge or loop at {0}")]
    MultiEdge(Edge),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not a tree")]
    NotTree,
    #[error("graph is not a caterpillar")]
    NotCaterpillar,
    #[error("vertex cap {cap} exceeded by {count} vertices")]
    VertexCap { cap: usize, count: usize },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("vertex {0} is not colored")]
    UncoloredVertex(VertexId),
    #[error("edge {0} is not colored")]
    UncoloredEdge(Edge),
    #[error("color {0} is negative")]
    NegativeColor(i64),
    #[error("edge {edge}: equation values disagree, found {values:?}")]
    ConstantMismatch { edge: Edge, values: Vec<i64> },
    #[error("matching edge {edge} sums to {found}, expected {expected}")]
    MatchingSum {
        edge: Edge,
        found: i64,
        expected: i64,
    },
    #[error("not a perfect matching: {0}")]
    NotPerfectMatching(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("leaf plan adds no leaves")]
    EmptyPlan,
    #[error("leaf vertex color would be negative ({color}) at leaf of {parent}")]
    NegativeLeafColor { parent: VertexId, color: i64 },
    #[error("coincide pair joins colors {0} and {1}")]
    ColorMismatch(i64, i64),
    #[error("counting argument out of range: {0}")]
    CountRange(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("permutation index out of range")]
    IndexOutOfRange,
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("authentication failed: {0}")]
    Authentication(String),
    #[error("digest mismatch")]
    DigestMismatch,
}

impl Error {
    /// True for verdict-style failures (the input was read but rejected),
    /// false for malformed or out-of-domain input.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::ConstantMismatch { .. }
                | Error::MatchingSum { .. }
                | Error::Validation(_)
                | Error::Precondition(_)
                | Error::NegativeLeafColor { .. }
                | Error::ColorMismatch(..)
                | Error::MultiEdge(_)
                | Error::Disconnected
                | Error::NotBipartite
                | Error::NotTree
                | Error::NotCaterpillar
                | Error::NotPerfectMatching(_)
                | Error::Authentication(_)
                | Error::DigestMismatch
        )
    }
}
