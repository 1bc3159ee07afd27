use crate::graph::Vertex;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a vertex of the graph")]
    UnknownVertex(Vertex),
    #[error("{0}{1} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("cannot contract every vertex onto an empty remainder")]
    ContractAll,
    #[error("set vertex {0} has no path to a vertex outside the set")]
    NoOutsideNeighbour(Vertex),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is a tree; it cannot be contracted to a cycle")]
    Tree,
    #[error("anchor vertices must be distinct (got {0} twice)")]
    SameAnchors(Vertex),
    #[error("instance has {n} vertices, above the oracle cap of {cap}")]
    OracleCap { n: usize, cap: usize },
    #[error("stale reduction site: {0}")]
    StaleSite(String),
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("trace replay diverged: {0}")]
    Replay(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
