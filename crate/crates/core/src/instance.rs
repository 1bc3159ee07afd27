use crate::graph::{Graph, Vertex};
use serde::{Deserialize, Serialize};

/// Cycle Contraction: can `g` become a cycle with at most `k` contractions?
/// The budget is signed because reduction rules may overdraw it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleInstance {
    pub g: Graph,
    pub k: i64,
}

impl CycleInstance {
    pub fn new(g: Graph, k: i64) -> Self {
        CycleInstance { g, k }
    }
}

/// Path Contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathInstance {
    pub g: Graph,
    pub k: usize,
}

impl PathInstance {
    pub fn new(g: Graph, k: usize) -> Self {
        PathInstance { g, k }
    }
}

/// Path Contraction with Fixed Endvertices: the end sets of the resulting
/// path must contain `u` and `v` respectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcfeInstance {
    pub g: Graph,
    pub u: Vertex,
    pub v: Vertex,
    pub k: usize,
}

impl PcfeInstance {
    pub fn new(g: Graph, u: Vertex, v: Vertex, k: usize) -> Self {
        PcfeInstance { g, u, v, k }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Cycle,
    Path,
    Pcfe,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Cycle(CycleInstance),
    Path(PathInstance),
    Pcfe(PcfeInstance),
}

impl Instance {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Instance::Cycle(_) => ProblemKind::Cycle,
            Instance::Path(_) => ProblemKind::Path,
            Instance::Pcfe(_) => ProblemKind::Pcfe,
        }
    }

    pub fn graph(&self) -> &Graph {
        match self {
            Instance::Cycle(c) => &c.g,
            Instance::Path(p) => &p.g,
            Instance::Pcfe(p) => &p.g,
        }
    }

    pub fn budget(&self) -> i64 {
        match self {
            Instance::Cycle(c) => c.k,
            Instance::Path(p) => p.k as i64,
            Instance::Pcfe(p) => p.k as i64,
        }
    }
}

/// Result of a kernelization: a decision, or an equivalent smaller instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced<I> {
    No,
    Yes,
    Kernel(I),
}

impl<I> Reduced<I> {
    pub fn is_no(&self) -> bool {
        matches!(self, Reduced::No)
    }

    pub fn kernel(&self) -> Option<&I> {
        match self {
            Reduced::Kernel(i) => Some(i),
            _ => None,
        }
    }

    pub fn map<J>(self, f: impl FnOnce(I) -> J) -> Reduced<J> {
        match self {
            Reduced::No => Reduced::No,
            Reduced::Yes => Reduced::Yes,
            Reduced::Kernel(i) => Reduced::Kernel(f(i)),
        }
    }
}
