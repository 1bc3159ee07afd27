//! Exact brute-force solvers for contraction problems on small graphs.
//!
//! States are partitions of the input's vertices into connected parts. A
//! partition with `b` parts is reachable by exactly `n - b` contractions, so
//! breadth-first search over merges, level by level, finds the minimum
//! number of contractions reaching the target shape. Partitions are packed
//! as restricted-growth strings, five bits per vertex.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::Instance;
use crate::witness::{TargetKind, WitnessStructure};
use std::collections::HashSet;

/// Largest graph the state packing can represent.
pub const HARD_LIMIT: usize = 25;
pub const DEFAULT_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// `None` when the target is unreachable.
    pub optimum: Option<usize>,
    pub witness: Option<WitnessStructure>,
    /// Distinct partitions visited.
    pub explored: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Cycle,
    Path,
    // Local indices of the anchors.
    Pcfe(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

type Key = u128;

struct Local {
    ids: Vec<Vertex>,
    edges: Vec<(u8, u8)>,
}

impl Local {
    fn of(g: &Graph) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let mut index = vec![u8::MAX; g.id_bound()];
        for (i, v) in ids.iter().enumerate() {
            index[v.index()] = i as u8;
        }
        let edges = g
            .edges()
            .map(|(a, b)| (index[a.index()], index[b.index()]))
            .collect();
        Local { ids, edges }
    }

    fn index_of(&self, v: Vertex) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }
}

fn pack(labels: &[u8]) -> Key {
    labels
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &l)| acc | (Key::from(l) << (5 * i)))
}

fn unpack(key: Key, n: usize, out: &mut [u8]) {
    for (i, slot) in out.iter_mut().enumerate().take(n) {
        *slot = ((key >> (5 * i)) & 0x1f) as u8;
    }
}

/// Relabels so that parts are numbered by first occurrence.
fn normalize(labels: &mut [u8]) -> usize {
    let mut map = [u8::MAX; 32];
    let mut next = 0u8;
    for l in labels.iter_mut() {
        if map[*l as usize] == u8::MAX {
            map[*l as usize] = next;
            next += 1;
        }
        *l = map[*l as usize];
    }
    next as usize
}

/// Quotient adjacency as bitmasks, one per part.
fn quotient(labels: &[u8], parts: usize, edges: &[(u8, u8)]) -> [u32; 32] {
    let mut adj = [0u32; 32];
    for &(a, b) in edges {
        let (la, lb) = (labels[a as usize], labels[b as usize]);
        if la != lb {
            adj[la as usize] |= 1 << lb;
            adj[lb as usize] |= 1 << la;
        }
    }
    debug_assert!(parts <= 32);
    adj
}

fn satisfies(target: Target, labels: &[u8], parts: usize, adj: &[u32; 32]) -> bool {
    let degrees = || adj[..parts].iter().map(|m| m.count_ones());
    match target {
        Target::Cycle => parts >= 3 && degrees().all(|d| d == 2),
        Target::Path => is_path_quotient(parts, adj),
        Target::Pcfe(u, v) => {
            if parts == 1 {
                return true;
            }
            let (lu, lv) = (labels[u] as usize, labels[v] as usize);
            lu != lv
                && is_path_quotient(parts, adj)
                && adj[lu].count_ones() == 1
                && adj[lv].count_ones() == 1
        }
    }
}

// Quotients of connected graphs are connected, so degree and edge counts
// suffice.
fn is_path_quotient(parts: usize, adj: &[u32; 32]) -> bool {
    let mut edge_ends = 0;
    for m in &adj[..parts] {
        let d = m.count_ones();
        if d > 2 {
            return false;
        }
        edge_ends += d as usize;
    }
    edge_ends == 2 * (parts - 1)
}

struct Search {
    /// Contractions at the first satisfying level, with the satisfying
    /// partitions sorted by key.
    hit: Option<(usize, Vec<Key>)>,
    explored: usize,
}

impl Oracle {
    pub fn new(cap: usize) -> Self {
        Oracle { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn admit(&self, g: &Graph) -> Result<()> {
        let limit = self.cap.min(HARD_LIMIT);
        if g.order() > limit {
            return Err(Error::OracleCap {
                n: g.order(),
                cap: limit,
            });
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// BFS until the first level containing a target partition, or until
    /// `max_level` contractions have been tried.
    fn search(&self, local: &Local, target: Target, max_level: usize) -> Search {
        let n = local.ids.len();
        let mut labels: Vec<u8> = (0..n as u8).collect();
        let mut frontier: Vec<Key> = vec![pack(&labels)];
        let mut explored = 0;
        let mut scratch = vec![0u8; n];
        for level in 0..=max_level {
            let parts = n - level;
            let mut hits = Vec::new();
            for &key in &frontier {
                explored += 1;
                unpack(key, n, &mut labels);
                let adj = quotient(&labels, parts, &local.edges);
                if satisfies(target, &labels, parts, &adj) {
                    hits.push(key);
                }
            }
            if !hits.is_empty() {
                hits.sort_unstable();
                return Search {
                    hit: Some((level, hits)),
                    explored,
                };
            }
            if parts <= 1 || level == max_level {
                break;
            }
            let mut next: HashSet<Key> = HashSet::with_capacity(frontier.len() * 2);
            for &key in &frontier {
                unpack(key, n, &mut labels);
                for &(a, b) in &local.edges {
                    let (la, lb) = (labels[a as usize], labels[b as usize]);
                    if la == lb {
                        continue;
                    }
                    let (keep, gone) = (la.min(lb), la.max(lb));
                    scratch.copy_from_slice(&labels);
                    for l in scratch.iter_mut() {
                        if *l == gone {
                            *l = keep;
                        }
                    }
                    normalize(&mut scratch);
                    next.insert(pack(&scratch));
                }
            }
            frontier = next.into_iter().collect();
        }
        Search {
            hit: None,
            explored,
        }
    }

    fn solve(&self, g: &Graph, target: Target) -> Result<OracleResult> {
        let local = Local::of(g);
        let n = local.ids.len();
        if target == Target::Cycle && (n < 3 || g.is_tree()) {
            return Ok(OracleResult {
                optimum: None,
                witness: None,
                explored: 0,
            });
        }
        let found = self.search(&local, target, n - 1);
        Ok(OracleResult {
            optimum: found.hit.as_ref().map(|(level, _)| *level),
            witness: found
                .hit
                .as_ref()
                .map(|(_, keys)| witness_from(&local, keys[0], target)),
            explored: found.explored,
        })
    }

    /// Fewest contractions turning `g` into a cycle on at least 3 vertices.
    pub fn min_to_cycle(&self, g: &Graph) -> Result<OracleResult> {
        self.admit(g)?;
        self.solve(g, Target::Cycle)
    }

    /// Fewest contractions turning `g` into a path (a single vertex counts).
    pub fn min_to_path(&self, g: &Graph) -> Result<OracleResult> {
        self.admit(g)?;
        self.solve(g, Target::Path)
    }

    /// Fewest contractions turning `g` into a path whose end sets contain
    /// `u` and `v` respectively. Collapsing to one vertex counts.
    pub fn min_pcfe(&self, g: &Graph, u: Vertex, v: Vertex) -> Result<OracleResult> {
        self.admit(g)?;
        let target = self.pcfe_target(g, u, v)?;
        self.solve(g, target)
    }

    fn pcfe_target(&self, g: &Graph, u: Vertex, v: Vertex) -> Result<Target> {
        if u == v {
            return Err(Error::SameAnchors(u));
        }
        let local = Local::of(g);
        let lu = local.index_of(u).ok_or(Error::UnknownVertex(u))?;
        let lv = local.index_of(v).ok_or(Error::UnknownVertex(v))?;
        Ok(Target::Pcfe(lu, lv))
    }

    /// Whether the instance is solvable within its budget. The search stops
    /// after `k` contractions, so graphs up to [`HARD_LIMIT`] vertices are
    /// tractable at small `k` when the cap allows them.
    pub fn decide(&self, instance: &Instance) -> Result<bool> {
        let (g, target, k) = match instance {
            Instance::Cycle(c) => {
                self.admit(&c.g)?;
                if c.k < 0 || c.g.order() < 3 || c.g.is_tree() {
                    return Ok(false);
                }
                (&c.g, Target::Cycle, c.k as usize)
            }
            Instance::Path(p) => {
                self.admit(&p.g)?;
                (&p.g, Target::Path, p.k)
            }
            Instance::Pcfe(p) => {
                self.admit(&p.g)?;
                (&p.g, self.pcfe_target(&p.g, p.u, p.v)?, p.k)
            }
        };
        let local = Local::of(g);
        let max_level = k.min(local.ids.len() - 1);
        Ok(self.search(&local, target, max_level).hit.is_some())
    }

    /// All witness structures of `g` onto its longest contractible cycle.
    /// Each partition yields one witness, so rotations and reflections of
    /// the same cyclic order are never repeated.
    pub fn enumerate_optimal_cycle_witnesses(&self, g: &Graph) -> Result<Vec<WitnessStructure>> {
        self.admit(g)?;
        if g.order() < 3 || g.is_tree() {
            return Err(Error::Tree);
        }
        let local = Local::of(g);
        let (_, hits) = self
            .search(&local, Target::Cycle, local.ids.len() - 1)
            .hit
            .ok_or(Error::Tree)?;
        Ok(hits
            .iter()
            .map(|&key| witness_from(&local, key, Target::Cycle))
            .collect())
    }
}

fn witness_from(local: &Local, key: Key, target: Target) -> WitnessStructure {
    let n = local.ids.len();
    let mut labels = vec![0u8; n];
    unpack(key, n, &mut labels);
    let parts = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    let adj = quotient(&labels, parts, &local.edges);
    let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); parts];
    for (i, &l) in labels.iter().enumerate() {
        members[l as usize].push(local.ids[i]);
    }
    let start = match target {
        Target::Cycle => 0,
        Target::Path => (0..parts)
            .find(|&p| adj[p].count_ones() <= 1)
            .expect("a path has an end"),
        Target::Pcfe(u, _) => labels[u] as usize,
    };
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < parts {
        let mut mask = adj[cur];
        if prev != usize::MAX {
            mask &= !(1 << prev);
        }
        let next = mask.trailing_zeros() as usize;
        if next >= parts || order.contains(&next) {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    let sets = order.into_iter().map(|p| members[p].clone()).collect::<Vec<_>>();
    let endpoints = match target {
        Target::Cycle => None,
        _ => Some((0, sets.len() - 1)),
    };
    WitnessStructure {
        target: match target {
            Target::Cycle => TargetKind::Cycle,
            _ => TargetKind::Path,
        },
        sets,
        endpoints,
    }
}
