//! Blocks, cut vertices, bridges and 2-edge-connected components via
//! iterative DFS low-link, plus the vertex-connectivity tests built on it.

use super::{Graph, Vertex};
use crate::error::{Error, Result};

const UNSEEN: usize = usize::MAX;

/// Low-link data of one DFS forest, optionally ignoring a deleted vertex.
pub struct Connectivity<'g> {
    g: &'g Graph,
    skip: Option<Vertex>,
    disc: Vec<usize>,
    low: Vec<usize>,
    parent: Vec<Option<Vertex>>,
    subtree: Vec<usize>,
    children: Vec<Vec<Vertex>>,
    /// Per DFS tree: root and number of vertices.
    roots: Vec<(Vertex, usize)>,
    root_of: Vec<Vertex>,
}

impl<'g> Connectivity<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Self::build(g, None)
    }

    /// Low-link of `g - skip`.
    pub fn without(g: &'g Graph, skip: Vertex) -> Self {
        Self::build(g, Some(skip))
    }

    fn build(g: &'g Graph, skip: Option<Vertex>) -> Self {
        let bound = g.id_bound();
        let mut c = Connectivity {
            g,
            skip,
            disc: vec![UNSEEN; bound],
            low: vec![UNSEEN; bound],
            parent: vec![None; bound],
            subtree: vec![0; bound],
            children: vec![Vec::new(); bound],
            roots: Vec::new(),
            root_of: vec![Vertex(u32::MAX); bound],
        };
        let mut time = 0;
        let mut stack: Vec<(Vertex, usize)> = Vec::new();
        for root in g.vertices() {
            if Some(root) == skip || c.disc[root.index()] != UNSEEN {
                continue;
            }
            let start = time;
            c.disc[root.index()] = time;
            c.low[root.index()] = time;
            c.root_of[root.index()] = root;
            time += 1;
            stack.push((root, 0));
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                let nbrs = g.neighbours(v);
                if *next < nbrs.len() {
                    let w = nbrs[*next];
                    *next += 1;
                    if Some(w) == skip {
                        continue;
                    }
                    if c.disc[w.index()] == UNSEEN {
                        c.disc[w.index()] = time;
                        c.low[w.index()] = time;
                        c.parent[w.index()] = Some(v);
                        c.root_of[w.index()] = root;
                        c.children[v.index()].push(w);
                        time += 1;
                        stack.push((w, 0));
                    } else if Some(w) != c.parent[v.index()] {
                        c.low[v.index()] = c.low[v.index()].min(c.disc[w.index()]);
                    }
                } else {
                    stack.pop();
                    c.subtree[v.index()] += 1;
                    if let Some(p) = c.parent[v.index()] {
                        c.low[p.index()] = c.low[p.index()].min(c.low[v.index()]);
                        c.subtree[p.index()] += c.subtree[v.index()];
                    }
                }
            }
            c.roots.push((root, time - start));
        }
        c
    }

    pub fn component_count(&self) -> usize {
        self.roots.len()
    }

    fn tree_size(&self, v: Vertex) -> usize {
        let root = self.root_of[v.index()];
        self.roots
            .iter()
            .find(|(r, _)| *r == root)
            .map(|&(_, n)| n)
            .expect("visited vertex has a root")
    }

    /// Sizes of the pieces its own component falls into when `v` is deleted.
    /// A single entry means `v` is not a cut vertex.
    pub fn split_sizes(&self, v: Vertex) -> Vec<usize> {
        debug_assert!(self.disc[v.index()] != UNSEEN);
        let total = self.tree_size(v);
        if self.parent[v.index()].is_none() {
            return self.children[v.index()]
                .iter()
                .map(|c| self.subtree[c.index()])
                .collect();
        }
        let mut pieces: Vec<usize> = self.children[v.index()]
            .iter()
            .filter(|c| self.low[c.index()] >= self.disc[v.index()])
            .map(|c| self.subtree[c.index()])
            .collect();
        let rest = total - 1 - pieces.iter().sum::<usize>();
        if rest > 0 {
            pieces.push(rest);
        }
        pieces
    }

    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        self.split_sizes(v).len() > 1
    }

    pub fn has_cut_vertex(&self) -> bool {
        self.g
            .vertices()
            .filter(|&v| Some(v) != self.skip)
            .any(|v| self.is_cut_vertex(v))
    }

    /// Tree edge `parent(v) - v` is a bridge.
    fn is_bridge_below(&self, v: Vertex) -> bool {
        self.parent[v.index()].is_some() && self.low[v.index()] == self.disc[v.index()]
    }
}

/// Blocks, cut vertices, bridges and 2-edge-connected components of a
/// connected graph. All vertex lists are sorted; lists of sets are ordered by
/// smallest member, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Vec<Vertex>>,
    pub cut_vertices: Vec<Vertex>,
    pub bridges: Vec<(Vertex, Vertex)>,
    pub tecc: Vec<Vec<Vertex>>,
}

impl BlockDecomposition {
    pub fn of(g: &Graph) -> Result<Self> {
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let bound = g.id_bound();
        let mut disc = vec![UNSEEN; bound];
        let mut low = vec![UNSEEN; bound];
        let mut parent: Vec<Option<Vertex>> = vec![None; bound];
        let mut is_cut = vec![false; bound];
        let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
        let mut blocks = Vec::new();
        let mut bridges = Vec::new();
        let mut time = 0;

        let root = g.vertices().next().expect("connected graphs are nonempty");
        if g.order() == 1 {
            blocks.push(vec![root]);
        }
        let mut root_children = 0;
        disc[root.index()] = 0;
        low[root.index()] = 0;
        time += 1;
        let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let nbrs = g.neighbours(v);
            if *next < nbrs.len() {
                let w = nbrs[*next];
                *next += 1;
                if disc[w.index()] == UNSEEN {
                    disc[w.index()] = time;
                    low[w.index()] = time;
                    time += 1;
                    parent[w.index()] = Some(v);
                    edge_stack.push((v, w));
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, 0));
                } else if Some(w) != parent[v.index()] && disc[w.index()] < disc[v.index()] {
                    low[v.index()] = low[v.index()].min(disc[w.index()]);
                    edge_stack.push((v, w));
                }
            } else {
                stack.pop();
                let Some(p) = parent[v.index()] else { continue };
                low[p.index()] = low[p.index()].min(low[v.index()]);
                if low[v.index()] >= disc[p.index()] {
                    if p != root {
                        is_cut[p.index()] = true;
                    }
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(e.0);
                        block.push(e.1);
                        if e == (p, v) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    blocks.push(block);
                }
                if low[v.index()] > disc[p.index()] {
                    bridges.push((p.min(v), p.max(v)));
                }
            }
        }
        if root_children > 1 {
            is_cut[root.index()] = true;
        }
        blocks.sort();
        bridges.sort_unstable();

        let tecc = two_edge_components(g, &bridges);
        let cut_vertices = g.vertices().filter(|v| is_cut[v.index()]).collect();
        Ok(BlockDecomposition {
            blocks,
            cut_vertices,
            bridges,
            tecc,
        })
    }
}

fn two_edge_components(g: &Graph, bridges: &[(Vertex, Vertex)]) -> Vec<Vec<Vertex>> {
    let is_bridge = |a: Vertex, b: Vertex| bridges.binary_search(&(a.min(b), a.max(b))).is_ok();
    let mut seen = vec![false; g.id_bound()];
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen[s.index()] {
            continue;
        }
        seen[s.index()] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in g.neighbours(x) {
                if !seen[y.index()] && !is_bridge(x, y) {
                    seen[y.index()] = true;
                    comp.push(y);
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// The tree whose nodes are the 2-edge-connected components of a connected
/// graph and whose edges are its bridges.
pub struct BridgeTree {
    /// Component vertex sets, ordered by smallest member.
    pub nodes: Vec<Vec<Vertex>>,
    node_of: Vec<usize>,
    // Rooted at node 0: parent node with the bridge (parent side, child side).
    parent: Vec<Option<(usize, Vertex, Vertex)>>,
    children: Vec<Vec<usize>>,
    subtree_size: Vec<usize>,
    subtree_min: Vec<Vertex>,
    // Min vertex outside the subtree of each node (None for the root).
    outside_min: Vec<Option<Vertex>>,
    order: usize,
}

/// One component of `G - C` for a bridge-tree node `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub size: usize,
    pub min_vertex: Vertex,
    /// Bridge endpoint inside `C`.
    pub inner: Vertex,
    /// Bridge endpoint inside the branch.
    pub outer: Vertex,
}

impl BridgeTree {
    pub fn of(g: &Graph) -> Result<Self> {
        let bridge_list = Connectivity::new(g);
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let bridges: Vec<(Vertex, Vertex)> = {
            let mut b: Vec<_> = g
                .vertices()
                .filter(|&v| bridge_list.is_bridge_below(v))
                .map(|v| {
                    let p = bridge_list.parent[v.index()].expect("non-root");
                    (p.min(v), p.max(v))
                })
                .collect();
            b.sort_unstable();
            b
        };
        let nodes = two_edge_components(g, &bridges);
        let mut node_of = vec![usize::MAX; g.id_bound()];
        for (i, comp) in nodes.iter().enumerate() {
            for v in comp {
                node_of[v.index()] = i;
            }
        }
        let count = nodes.len();
        let mut adj: Vec<Vec<(usize, Vertex, Vertex)>> = vec![Vec::new(); count];
        for &(a, b) in &bridges {
            let (na, nb) = (node_of[a.index()], node_of[b.index()]);
            adj[na].push((nb, a, b));
            adj[nb].push((na, b, a));
        }
        let mut parent = vec![None; count];
        let mut children = vec![Vec::new(); count];
        let mut order = Vec::with_capacity(count);
        let mut visited = vec![false; count];
        visited[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            order.push(x);
            for &(y, here, there) in &adj[x] {
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = Some((x, here, there));
                    children[x].push(y);
                    stack.push(y);
                }
            }
        }
        let mut subtree_size: Vec<usize> = nodes.iter().map(Vec::len).collect();
        let mut subtree_min: Vec<Vertex> = nodes.iter().map(|c| c[0]).collect();
        for &x in order.iter().rev() {
            if let Some((p, _, _)) = parent[x] {
                subtree_size[p] += subtree_size[x];
                subtree_min[p] = subtree_min[p].min(subtree_min[x]);
            }
        }
        // Everything outside subtree(y) = outside(parent) + parent itself +
        // sibling subtrees.
        let mut outside_min: Vec<Option<Vertex>> = vec![None; count];
        for &x in &order {
            let kids = &children[x];
            let mut prefix: Vec<Option<Vertex>> = Vec::with_capacity(kids.len() + 1);
            prefix.push(None);
            for &c in kids {
                let last = *prefix.last().unwrap();
                prefix.push(min_opt(last, Some(subtree_min[c])));
            }
            let mut suffix = None;
            for (i, &c) in kids.iter().enumerate().rev() {
                let siblings = min_opt(prefix[i], suffix);
                let base = min_opt(outside_min[x], Some(nodes[x][0]));
                outside_min[c] = min_opt(base, siblings);
                suffix = min_opt(suffix, Some(subtree_min[c]));
            }
        }
        Ok(BridgeTree {
            nodes,
            node_of,
            parent,
            children,
            subtree_size,
            subtree_min,
            outside_min,
            order: g.order(),
        })
    }

    pub fn node_of(&self, v: Vertex) -> usize {
        self.node_of[v.index()]
    }

    /// Components of `G - nodes[c]`, one per incident bridge, unsorted.
    pub fn branches(&self, c: usize) -> Vec<Branch> {
        let mut out = Vec::new();
        if let Some((_, parent_side, child_side)) = self.parent[c] {
            out.push(Branch {
                size: self.order - self.subtree_size[c],
                min_vertex: self.outside_min[c].expect("non-root has an outside"),
                inner: child_side,
                outer: parent_side,
            });
        }
        for &k in &self.children[c] {
            let (_, here, there) = self.parent[k].expect("child has parent");
            out.push(Branch {
                size: self.subtree_size[k],
                min_vertex: self.subtree_min[k],
                inner: here,
                outer: there,
            });
        }
        out
    }
}

fn min_opt(a: Option<Vertex>, b: Option<Vertex>) -> Option<Vertex> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Vertex `k`-connectivity: at least `k + 1` vertices and no set of fewer
/// than `k` vertices disconnects the graph. Graphs on `k` or fewer vertices
/// are reported as not `k`-connected.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if g.order() <= k || !g.is_connected() {
        return false;
    }
    match k {
        0 | 1 => true,
        2 => !Connectivity::new(g).has_cut_vertex(),
        _ => {
            if g.vertices().any(|v| g.degree(v) < k) {
                return false;
            }
            if k == 3 {
                if !is_k_connected(g, 2) {
                    return false;
                }
                return g.vertices().all(|x| {
                    let c = Connectivity::without(g, x);
                    c.component_count() == 1 && !c.has_cut_vertex()
                });
            }
            g.vertices().all(|x| is_k_connected(&g.without(&[x]), k - 1))
        }
    }
}

/// Connected and bridgeless. A single vertex counts as 2-edge-connected.
pub fn is_two_edge_connected(g: &Graph) -> bool {
    if !g.is_connected() {
        return false;
    }
    let c = Connectivity::new(g);
    !g.vertices().any(|v| c.is_bridge_below(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Vertex {
        Vertex(i)
    }

    fn c10_with_triangle() -> Graph {
        let mut g = Graph::cycle(10);
        let a = g.add_vertex();
        let b = g.add_vertex();
        for (x, y) in [(v(0), a), (v(0), b), (a, b)] {
            g.add_edge(x, y).unwrap();
        }
        g
    }

    #[test]
    fn tree_blocks_are_its_edges() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        let d = BlockDecomposition::of(&g).unwrap();
        assert_eq!(d.bridges.len(), 5);
        assert_eq!(d.blocks.len(), 5);
        assert!(d.blocks.iter().all(|b| b.len() == 2));
        assert_eq!(d.cut_vertices, vec![v(1), v(3)]);
        assert_eq!(d.tecc.len(), 6);
    }

    #[test]
    fn cycle_with_triangle_has_two_blocks() {
        let d = BlockDecomposition::of(&c10_with_triangle()).unwrap();
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.blocks[1], vec![v(0), v(10), v(11)]);
        assert_eq!(d.blocks[0], (0..10).map(v).collect::<Vec<_>>());
        assert_eq!(d.cut_vertices, vec![v(0)]);
        assert!(d.bridges.is_empty());
        assert_eq!(d.tecc.len(), 1);
    }

    #[test]
    fn cycle_is_one_block() {
        let d = BlockDecomposition::of(&Graph::cycle(5)).unwrap();
        assert_eq!(d.blocks, vec![(0..5).map(v).collect::<Vec<_>>()]);
        assert!(d.cut_vertices.is_empty());
        assert!(d.bridges.is_empty());
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(BlockDecomposition::of(&g).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn single_vertex_is_its_own_block() {
        let d = BlockDecomposition::of(&Graph::new(1)).unwrap();
        assert_eq!(d.blocks, vec![vec![v(0)]]);
    }

    #[test]
    fn k_connectivity_small_cases() {
        assert!(is_k_connected(&Graph::complete(4), 3));
        for n in 4..9 {
            assert!(is_k_connected(&Graph::cycle(n), 2));
            assert!(!is_k_connected(&Graph::cycle(n), 3));
        }
        assert!(!is_k_connected(&Graph::path(3), 2));
        assert!(!is_k_connected(&Graph::complete(3), 3));
        assert!(is_k_connected(&Graph::complete(3), 2));
        assert!(is_k_connected(&Graph::complete(6), 5));
        assert!(!is_k_connected(&Graph::complete(6), 6));
    }

    #[test]
    fn wheel_is_three_connected_but_not_four() {
        let mut g = Graph::cycle(6);
        let hub = g.add_vertex();
        for i in 0..6 {
            g.add_edge(v(i), hub).unwrap();
        }
        assert!(is_k_connected(&g, 3));
        assert!(!is_k_connected(&g, 4));
    }

    #[test]
    fn two_edge_connectivity() {
        assert!(is_two_edge_connected(&Graph::cycle(5)));
        assert!(!is_two_edge_connected(&Graph::path(4)));
        let bowtie = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(is_two_edge_connected(&bowtie));
        assert!(is_two_edge_connected(&Graph::new(1)));
    }

    #[test]
    fn split_sizes_after_deleting_a_vertex() {
        // C8 minus vertex 0 is a path 1..7; deleting 4 leaves 3 + 3.
        let g = Graph::cycle(8);
        let c = Connectivity::without(&g, v(0));
        let mut s = c.split_sizes(v(4));
        s.sort();
        assert_eq!(s, vec![3, 3]);
        assert_eq!(c.split_sizes(v(1)), vec![6]);
        assert_eq!(c.split_sizes(v(7)), vec![6]);
    }

    #[test]
    fn bridge_tree_branches_of_a_path() {
        let g = Graph::path(10);
        let t = BridgeTree::of(&g).unwrap();
        assert_eq!(t.nodes.len(), 10);
        let c = t.node_of(v(4));
        let mut b = t.branches(c);
        b.sort_by_key(|x| x.min_vertex);
        assert_eq!(b[0].size, 4);
        assert_eq!(b[0].min_vertex, v(0));
        assert_eq!((b[0].inner, b[0].outer), (v(4), v(3)));
        assert_eq!(b[1].size, 5);
        assert_eq!(b[1].min_vertex, v(5));
    }

    #[test]
    fn bridge_tree_outside_minimum_skips_the_subtree() {
        // Star centre 3 with leaves 0,1,2 and a tail 3-4-5.
        let g = Graph::from_edges(6, [(3, 0), (3, 1), (3, 2), (3, 4), (4, 5)]).unwrap();
        let t = BridgeTree::of(&g).unwrap();
        for v0 in g.vertices() {
            for b in t.branches(t.node_of(v0)) {
                let side = g.without(&[b.inner]);
                let comp = side
                    .components()
                    .into_iter()
                    .find(|c| c.contains(&b.outer))
                    .unwrap();
                assert_eq!(comp.len(), b.size);
                assert_eq!(comp[0], b.min_vertex);
            }
        }
    }
}
