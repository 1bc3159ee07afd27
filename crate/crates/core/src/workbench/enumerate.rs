//! Exhaustive enumeration of small connected graphs, one per isomorphism
//! class, by vertex augmentation and canonical labelling.
//!
//! Every connected graph has a vertex whose removal keeps it connected, so
//! all classes on `n` vertices arise by joining a new vertex to a nonempty
//! subset of some class on `n - 1` vertices.

use crate::graph::{Graph, Vertex};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::HashSet;

/// Largest order the packed canonical key supports.
pub const MAX_ORDER: usize = 11;

/// Adjacency rows as bitmasks, vertices `0..n`.
type Rows = Vec<u16>;

fn rows_of(g: &Graph) -> (Rows, Vec<Vertex>) {
    let ids: Vec<Vertex> = g.vertices().collect();
    assert!(ids.len() <= MAX_ORDER, "graph too large to canonicalize");
    let mut pos = vec![usize::MAX; g.id_bound()];
    for (i, v) in ids.iter().enumerate() {
        pos[v.index()] = i;
    }
    let rows = ids
        .iter()
        .map(|&v| g.neighbours(v).iter().fold(0u16, |m, w| m | 1 << pos[w.index()]))
        .collect();
    (rows, ids)
}

fn graph_of(rows: &[u16]) -> Graph {
    let n = rows.len();
    let edges = (0..n).flat_map(|u| {
        (u + 1..n)
            .filter(move |&v| rows[u] >> v & 1 == 1)
            .map(move |v| (u as u32, v as u32))
    });
    Graph::from_edges(n, edges).expect("rows are symmetric and loop-free")
}

/// Upper-triangle bits in row-major order, under the given vertex order.
fn key_under(rows: &[u16], order: &[usize]) -> u64 {
    let n = order.len();
    let mut key = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            key = key << 1 | u64::from(rows[order[i]] >> order[j] & 1);
        }
    }
    key
}

/// Refines an ordered partition (cell index per vertex) until every vertex
/// of a cell sees the same number of neighbours in each cell. Cells split
/// in place, so the order of cells is determined by the graph alone.
fn refine(rows: &[u16], colour: &mut [usize]) {
    let n = rows.len();
    loop {
        let cells = colour.iter().max().map_or(0, |m| m + 1);
        let sig = |v: usize| -> (usize, Vec<usize>) {
            let mut counts = vec![0; cells];
            for w in 0..n {
                if rows[v] >> w & 1 == 1 {
                    counts[colour[w]] += 1;
                }
            }
            (colour[v], counts)
        };
        let sigs: Vec<_> = (0..n).map(sig).collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() == cells {
            return;
        }
        for v in 0..n {
            colour[v] = distinct.binary_search(&sigs[v]).expect("present");
        }
    }
}

fn search(rows: &[u16], colour: Vec<usize>, best: &mut Option<u64>) {
    let n = rows.len();
    let cells = colour.iter().max().map_or(0, |m| m + 1);
    if cells == n {
        let mut order = vec![0; n];
        for v in 0..n {
            order[colour[v]] = v;
        }
        let key = key_under(rows, &order);
        if best.is_none_or(|b| key < b) {
            *best = Some(key);
        }
        return;
    }
    // First cell with more than one vertex.
    let mut size = vec![0; cells];
    for &c in &colour {
        size[c] += 1;
    }
    let target = (0..cells).find(|&c| size[c] > 1).expect("not discrete");
    for v in (0..n).filter(|&v| colour[v] == target) {
        // Individualize v: it takes the front of its cell.
        let mut next: Vec<usize> = colour.iter().map(|&c| if c > target { c + 1 } else { c }).collect();
        for w in 0..n {
            if colour[w] == target && w != v {
                next[w] = target + 1;
            }
        }
        refine(rows, &mut next);
        search(rows, next, best);
    }
}

fn canonical_rows_key(rows: &[u16]) -> u64 {
    let n = rows.len();
    let mut colour = vec![0; n];
    refine(rows, &mut colour);
    let mut best = None;
    search(rows, colour, &mut best);
    best.unwrap_or(0)
}

/// Isomorphism-invariant key of a graph on at most [`MAX_ORDER`] vertices.
/// Two graphs of the same order get equal keys exactly when isomorphic.
pub fn canonical_key(g: &Graph) -> u64 {
    canonical_rows_key(&rows_of(g).0)
}

/// One representative per isomorphism class of connected graphs on exactly
/// `n` vertices, with ids `0..n`, in order of canonical key.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    classes(n).into_iter().map(|(_, rows)| graph_of(&rows)).collect()
}

/// As [`connected_graphs`] for every order from 1 to `max_n`.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

fn classes(n: usize) -> Vec<(u64, Rows)> {
    assert!((1..=MAX_ORDER).contains(&n), "order out of range");
    let mut level: Vec<(u64, Rows)> = vec![(0, vec![0])];
    for m in 1..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (_, rows) in &level {
            for subset in 1u16..1 << m {
                let mut grown = rows.clone();
                for (u, row) in grown.iter_mut().enumerate() {
                    if subset >> u & 1 == 1 {
                        *row |= 1 << m;
                    }
                }
                grown.push(subset);
                let key = canonical_rows_key(&grown);
                if seen.insert(key) {
                    next.push((key, grown));
                }
            }
        }
        next.sort_by_key(|(key, _)| *key);
        level = next;
    }
    level
}

/// Every connected labelled graph on vertices `0..n`.
pub fn labelled_connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 32, "too many labelled graphs");
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            Graph::from_edges(n, edges).expect("valid pairs")
        })
        .filter(|g| g.is_connected())
        .collect()
}

/// A copy of `g` with its vertices renamed by a random permutation of
/// `0..n`. Origins are reset.
pub fn relabel<R: Rng>(g: &Graph, rng: &mut R) -> Graph {
    let (rows, _) = rows_of(g);
    let n = rows.len();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(rng);
    let edges = (0..n).flat_map(|u| {
        let perm = &perm;
        let rows = &rows;
        (u + 1..n)
            .filter(move |&v| rows[u] >> v & 1 == 1)
            .map(move |v| (perm[u], perm[v]))
    });
    Graph::from_edges(n, edges).expect("permuted edges are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn labelled_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| labelled_connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn keys_are_invariant_under_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in connected_graphs(6) {
            let key = canonical_key(&g);
            for _ in 0..3 {
                assert_eq!(canonical_key(&relabel(&g, &mut rng)), key);
            }
        }
    }

    #[test]
    fn cycle_and_path_differ() {
        assert_ne!(canonical_key(&Graph::cycle(6)), canonical_key(&Graph::path(6)));
        assert_eq!(canonical_key(&Graph::cycle(5)), canonical_key(&relabel(&Graph::cycle(5), &mut ChaCha8Rng::seed_from_u64(1))));
    }
}
