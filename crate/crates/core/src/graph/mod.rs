//! Simple undirected graphs with stable vertex identities and merge history.
//!
//! Every vertex carries an *origin* set: the ids it was built from. Fresh
//! graphs start with singleton origins; contracting `uv` unions the two
//! origin sets into the survivor. Origins therefore always partition the
//! ids the graph has ever contained, and each origin set induces a connected
//! subgraph of the graph it came from.

mod decompose;

pub use decompose::{
    is_k_connected, is_two_edge_connected, BlockDecomposition, BridgeTree, Connectivity,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

/// A vertex id. Ids are dense and never reused within one graph lineage.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(pub u32);

impl Vertex {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl From<u32> for Vertex {
    fn from(v: u32) -> Self {
        Vertex(v)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Graph {
    // Indexed by vertex id; dead ids have empty lists and `alive == false`.
    adj: Vec<Vec<Vertex>>,
    origin: Vec<Vec<Vertex>>,
    alive: Vec<bool>,
    order: usize,
    size: usize,
}

impl Graph {
    /// `n` isolated vertices with ids `0..n`.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            origin: (0..n as u32).map(|v| vec![Vertex(v)]).collect(),
            alive: vec![true; n],
            order: n,
            size: 0,
        }
    }

    /// Builds a graph on ids `0..n`. Self-loops are rejected, repeated edges
    /// are collapsed.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(Vertex(u), Vertex(v))?;
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Self {
        let n32 = n as u32;
        Graph::from_edges(n, (0..n32).map(|i| (i, (i + 1) % n32))).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        let n32 = n as u32;
        Graph::from_edges(n, (1..n32).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        let n32 = n as u32;
        let edges = (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("valid clique")
    }

    /// Adds an edge, returning `false` if it was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::NotAnEdge(u, v));
        }
        match self.adj[u.index()].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u.index()].insert(pos, v);
                let pos = self.adj[v.index()].binary_search(&u).unwrap_err();
                self.adj[v.index()].insert(pos, u);
                self.size += 1;
                Ok(true)
            }
        }
    }

    /// Adds an isolated vertex with the next unused id.
    pub fn add_vertex(&mut self) -> Vertex {
        let v = Vertex(self.adj.len() as u32);
        self.adj.push(Vec::new());
        self.origin.push(vec![v]);
        self.alive.push(true);
        self.order += 1;
        v
    }

    /// Inserts an isolated vertex under a chosen unused id, extending the
    /// id space if needed.
    pub fn insert_vertex(&mut self, v: Vertex, origin: Vec<Vertex>) -> Result<()> {
        if self.contains(v) {
            return Err(Error::InvalidParams(format!("id {v} already in use")));
        }
        if v.index() >= self.adj.len() {
            let bound = v.index() + 1;
            self.adj.resize(bound, Vec::new());
            self.origin.resize(bound, Vec::new());
            self.alive.resize(bound, false);
        }
        self.alive[v.index()] = true;
        self.origin[v.index()] = origin;
        self.order += 1;
        Ok(())
    }

    /// Contracts a connected vertex set into `survivor`, which must belong to
    /// it. Vertices are merged in breadth-first order from `survivor`, so
    /// each step contracts an edge incident to the growing survivor.
    pub fn collapse_into(&mut self, set: &[Vertex], survivor: Vertex) -> Result<Vec<(Vertex, Vertex)>> {
        self.check(survivor)?;
        let mut in_set = vec![false; self.id_bound()];
        for &x in set {
            self.check(x)?;
            in_set[x.index()] = true;
        }
        if !in_set[survivor.index()] {
            return Err(Error::InvalidParams(format!("{survivor} is not in the collapsed set")));
        }
        let mut steps = Vec::new();
        let mut seen = vec![false; self.id_bound()];
        seen[survivor.index()] = true;
        let mut queue: VecDeque<Vertex> = self
            .neighbours(survivor)
            .iter()
            .copied()
            .filter(|w| in_set[w.index()])
            .collect();
        for w in &queue {
            seen[w.index()] = true;
        }
        while let Some(x) = queue.pop_front() {
            for &y in self.neighbours(x) {
                if in_set[y.index()] && !seen[y.index()] {
                    seen[y.index()] = true;
                    queue.push_back(y);
                }
            }
            self.contract_in_place(x, survivor)?;
            steps.push((x, survivor));
        }
        if let Some(&stuck) = set.iter().find(|x| !seen[x.index()]) {
            return Err(Error::NoOutsideNeighbour(stuck));
        }
        Ok(steps)
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of edges.
    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    /// One past the largest id ever allocated.
    #[inline]
    pub fn id_bound(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.alive.get(v.index()).copied().unwrap_or(false)
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Live vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| Vertex(i as u32))
    }

    /// Sorted neighbour list. Empty for unknown ids.
    #[inline]
    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        self.adj.get(v.index()).map(Vec::as_slice).unwrap_or(&[])
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbours(v).len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbours(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbours(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Sorted ids merged into `v`.
    pub fn origin(&self, v: Vertex) -> &[Vertex] {
        self.origin.get(v.index()).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Contracts the edge `uv`; `v` survives and keeps its id.
    pub fn contract_edge(&self, u: Vertex, v: Vertex) -> Result<Graph> {
        let mut g = self.clone();
        g.contract_in_place(u, v)?;
        Ok(g)
    }

    /// In-place form of [`Graph::contract_edge`].
    pub fn contract_in_place(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if !self.contains(u) || !self.contains(v) || !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let nu = std::mem::take(&mut self.adj[u.index()]);
        self.size -= nu.len();
        for &w in &nu {
            let list = &mut self.adj[w.index()];
            let pos = list.binary_search(&u).expect("symmetric adjacency");
            list.remove(pos);
        }
        for &w in &nu {
            if w != v {
                self.add_edge(w, v).expect("both endpoints live");
            }
        }
        let ou = std::mem::take(&mut self.origin[u.index()]);
        let merged = merge_sorted(&self.origin[v.index()], &ou);
        self.origin[v.index()] = merged;
        self.alive[u.index()] = false;
        self.order -= 1;
        Ok(())
    }

    /// Contracts every vertex of `set` onto the rest of the graph, one edge
    /// at a time, so that vertices outside the set keep their ids.
    ///
    /// At each step the smallest set vertex with a neighbour outside the set
    /// is merged into its smallest such neighbour. Returns the new graph and
    /// the number of contractions, which is always `set.len()`.
    pub fn contract_set_onto_rest(&self, set: &[Vertex]) -> Result<(Graph, usize)> {
        let mut g = self.clone();
        let steps = g.absorb_set(set)?;
        Ok((g, steps.len()))
    }

    /// Mutating form returning the `(removed, survivor)` contraction steps.
    pub(crate) fn absorb_set(&mut self, set: &[Vertex]) -> Result<Vec<(Vertex, Vertex)>> {
        let mut in_set = vec![false; self.id_bound()];
        let mut count = 0;
        for &x in set {
            self.check(x)?;
            if !in_set[x.index()] {
                in_set[x.index()] = true;
                count += 1;
            }
        }
        if count == 0 {
            return Ok(Vec::new());
        }
        if count == self.order {
            return Err(Error::ContractAll);
        }
        let outside = |g: &Graph, in_set: &[bool], x: Vertex| {
            g.neighbours(x).iter().copied().find(|w| !in_set[w.index()])
        };
        let mut frontier: BTreeSet<Vertex> = set
            .iter()
            .copied()
            .filter(|&x| outside(self, &in_set, x).is_some())
            .collect();
        let mut steps = Vec::with_capacity(count);
        while let Some(x) = frontier.pop_first() {
            let Some(w) = outside(self, &in_set, x) else {
                continue;
            };
            let inner: Vec<Vertex> = self
                .neighbours(x)
                .iter()
                .copied()
                .filter(|y| in_set[y.index()])
                .collect();
            self.contract_in_place(x, w)?;
            in_set[x.index()] = false;
            steps.push((x, w));
            frontier.extend(inner);
        }
        if steps.len() != count {
            let stuck = set
                .iter()
                .copied()
                .find(|&x| self.contains(x) && in_set[x.index()])
                .expect("some set vertex remains");
            return Err(Error::NoOutsideNeighbour(stuck));
        }
        Ok(steps)
    }

    /// Subgraph induced by `keep`, with ids and origins unchanged.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Graph {
        let mut mask = vec![false; self.id_bound()];
        for &v in keep {
            if self.contains(v) {
                mask[v.index()] = true;
            }
        }
        let mut g = Graph {
            adj: vec![Vec::new(); self.id_bound()],
            origin: vec![Vec::new(); self.id_bound()],
            alive: mask.clone(),
            order: 0,
            size: 0,
        };
        for v in self.vertices().filter(|v| mask[v.index()]) {
            g.order += 1;
            g.origin[v.index()] = self.origin[v.index()].clone();
            let nbrs: Vec<Vertex> = self
                .neighbours(v)
                .iter()
                .copied()
                .filter(|w| mask[w.index()])
                .collect();
            g.size += nbrs.len();
            g.adj[v.index()] = nbrs;
        }
        g.size /= 2;
        g
    }

    /// Graph with the given vertices deleted.
    pub fn without(&self, drop: &[Vertex]) -> Graph {
        let keep: Vec<Vertex> = self.vertices().filter(|v| !drop.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Copies the live vertices of `other` (ids, origins and edges) into
    /// `self`. Ids must not collide.
    pub fn absorb_disjoint(&mut self, other: &Graph) -> Result<()> {
        for v in other.vertices() {
            if self.contains(v) {
                return Err(Error::InvalidParams(format!("id {v} used on both sides")));
            }
        }
        if self.id_bound() < other.id_bound() {
            let bound = other.id_bound();
            self.adj.resize(bound, Vec::new());
            self.origin.resize(bound, Vec::new());
            self.alive.resize(bound, false);
        }
        for v in other.vertices() {
            self.alive[v.index()] = true;
            self.origin[v.index()] = other.origin(v).to_vec();
            self.order += 1;
        }
        for (u, v) in other.edges() {
            self.add_edge(u, v)?;
        }
        Ok(())
    }

    /// Connected components, each sorted, ordered by smallest vertex id.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.id_bound()];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if seen[s.index()] {
                continue;
            }
            seen[s.index()] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(x) = queue.pop_front() {
                comp.push(x);
                for &y in self.neighbours(x) {
                    if !seen[y.index()] {
                        seen[y.index()] = true;
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        if self.order == 0 {
            return false;
        }
        let s = self.vertices().next().expect("nonempty");
        let mut seen = vec![false; self.id_bound()];
        let mut stack = vec![s];
        seen[s.index()] = true;
        let mut count = 0;
        while let Some(x) = stack.pop() {
            count += 1;
            for &y in self.neighbours(x) {
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    stack.push(y);
                }
            }
        }
        count == self.order
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.size + 1 == self.order
    }

    /// A cycle has at least 3 vertices, all of degree 2, and is connected.
    pub fn is_cycle(&self) -> bool {
        self.order >= 3
            && self.size == self.order
            && self.vertices().all(|v| self.degree(v) == 2)
            && self.is_connected()
    }

    /// Includes the single vertex.
    pub fn is_path(&self) -> bool {
        self.order >= 1
            && self.size + 1 == self.order
            && self.vertices().all(|v| self.degree(v) <= 2)
            && self.is_connected()
    }

    /// Renumbers live vertices to `0..order` in ascending id order, dropping
    /// merge history. Returns the renumbered graph and the old ids by new index.
    pub fn compacted(&self) -> (Graph, Vec<Vertex>) {
        let ids: Vec<Vertex> = self.vertices().collect();
        let mut index = vec![u32::MAX; self.id_bound()];
        for (i, v) in ids.iter().enumerate() {
            index[v.index()] = i as u32;
        }
        let edges = self
            .edges()
            .map(|(u, v)| (index[u.index()], index[v.index()]));
        let g = Graph::from_edges(ids.len(), edges).expect("edges of a simple graph");
        (g, ids)
    }
}

fn merge_sorted(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
