use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(Vertex),
    #[error("{what}: graph has {size} vertices, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("cartesian product needs two nonempty graphs")]
    EmptyOperand,
    #[error("invalid family spec {spec:?}: {reason}")]
    FamilySpec { spec: String, reason: String },
    #[error("invalid graph6: {0}")]
    Graph6(String),
    #[error("invalid weight {weight} on vertex {vertex}; weights must be >= 1")]
    InvalidWeight { vertex: Vertex, weight: u32 },
    #[error("weight count {got} does not match vertex count {expected}")]
    WeightCount { expected: usize, got: usize },
    #[error("invalid multipartite part size {0}; parts must be positive")]
    InvalidPart(usize),
    #[error("{0}")]
    Unsupported(String),
    #[error("graph has isolated vertices")]
    IsolatedVertex,
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("game is already finished")]
    GameFinished,
    #[error("unknown verification suite {0:?}")]
    UnknownSuite(String),
    #[error("sequence file: {0}")]
    SequenceFile(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
