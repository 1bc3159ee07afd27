//! Deterministic instance generators.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::witness::{TargetKind, WitnessStructure};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Tree(usize),
    Random2Connected { n: usize, m: usize },
    /// Connected random sets of the given sizes, consecutive sets joined.
    BlownCycle(Vec<usize>),
    /// Two hubs joined by three paths with this many edges each.
    Theta(usize, usize, usize),
    /// A random 2-connected core with random trees hanging off it.
    Decorated { core: usize, core_m: usize, extra: usize },
}

pub const FAMILY_NAMES: &[&str] = &[
    "cycle",
    "path",
    "complete",
    "tree",
    "random-2connected",
    "blown-cycle",
    "theta",
    "decorated",
];

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

impl Family {
    /// Parses a family name and its integer parameters, as given on the
    /// command line. `blown-cycle` takes the number of sets followed by
    /// either one size for all sets or one size per set.
    pub fn parse(name: &str, params: &[usize]) -> Result<Family> {
        let want = |count: usize| {
            if params.len() == count {
                Ok(())
            } else {
                Err(invalid(format!("{name} takes {count} parameters, got {}", params.len())))
            }
        };
        let family = match name {
            "cycle" => want(1).map(|_| Family::Cycle(params[0])),
            "path" => want(1).map(|_| Family::Path(params[0])),
            "complete" => want(1).map(|_| Family::Complete(params[0])),
            "tree" => want(1).map(|_| Family::Tree(params[0])),
            "random-2connected" => want(2).map(|_| Family::Random2Connected {
                n: params[0],
                m: params[1],
            }),
            "theta" => want(3).map(|_| Family::Theta(params[0], params[1], params[2])),
            "decorated" => want(3).map(|_| Family::Decorated {
                core: params[0],
                core_m: params[1],
                extra: params[2],
            }),
            "blown-cycle" => match params {
                [m, size] => Ok(Family::BlownCycle(vec![*size; *m])),
                [m, sizes @ ..] if sizes.len() == *m => Ok(Family::BlownCycle(sizes.to_vec())),
                _ => Err(invalid("blown-cycle takes a set count and one size or one size per set")),
            },
            other => Err(invalid(format!(
                "unknown family `{other}` (known: {})",
                FAMILY_NAMES.join(", ")
            ))),
        }?;
        family.check()?;
        Ok(family)
    }

    fn check(&self) -> Result<()> {
        match self {
            Family::Cycle(n) if *n < 3 => Err(invalid("a cycle needs at least 3 vertices")),
            Family::Path(0) | Family::Complete(0) | Family::Tree(0) => Err(invalid("need at least 1 vertex")),
            Family::Random2Connected { n, m } => {
                if *n < 3 {
                    Err(invalid("need at least 3 vertices"))
                } else if *m < *n || *m > n * (n - 1) / 2 {
                    Err(invalid(format!("edge count must lie in {n}..={}", n * (n - 1) / 2)))
                } else {
                    Ok(())
                }
            }
            Family::BlownCycle(sizes) => {
                if sizes.len() < 3 {
                    Err(invalid("a blown cycle needs at least 3 sets"))
                } else if sizes.contains(&0) {
                    Err(invalid("sets must be nonempty"))
                } else {
                    Ok(())
                }
            }
            Family::Theta(a, b, c) => {
                let lens = [*a, *b, *c];
                if lens.contains(&0) {
                    Err(invalid("theta paths need at least one edge"))
                } else if lens.iter().filter(|&&l| l == 1).count() > 1 {
                    Err(invalid("at most one theta path may be a single edge"))
                } else {
                    Ok(())
                }
            }
            Family::Decorated { core, core_m, .. } => Family::Random2Connected { n: *core, m: *core_m }.check(),
            _ => Ok(()),
        }
    }

    pub fn generate(&self, seed: u64) -> Result<Graph> {
        self.check()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(match self {
            Family::Cycle(n) => Graph::cycle(*n),
            Family::Path(n) => Graph::path(*n),
            Family::Complete(n) => Graph::complete(*n),
            Family::Tree(n) => random_tree(*n, &mut rng),
            Family::Random2Connected { n, m } => random_2connected(*n, *m, &mut rng),
            Family::BlownCycle(sizes) => blown_cycle(sizes, &mut rng).0,
            Family::Theta(a, b, c) => theta(*a, *b, *c),
            Family::Decorated { core, core_m, extra } => {
                let mut g = random_2connected(*core, *core_m, &mut rng);
                grow_trees(&mut g, *extra, &mut rng);
                g
            }
        })
    }

    /// Contractions certified sufficient by construction, if any.
    pub fn planted_budget(&self) -> Option<usize> {
        match self {
            Family::Cycle(_) => Some(0),
            Family::BlownCycle(sizes) => Some(sizes.iter().map(|s| s - 1).sum()),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cycle(n) => write!(f, "cycle({n})"),
            Family::Path(n) => write!(f, "path({n})"),
            Family::Complete(n) => write!(f, "complete({n})"),
            Family::Tree(n) => write!(f, "tree({n})"),
            Family::Random2Connected { n, m } => write!(f, "random-2connected({n}, {m})"),
            Family::BlownCycle(sizes) => write!(f, "blown-cycle({sizes:?})"),
            Family::Theta(a, b, c) => write!(f, "theta({a}, {b}, {c})"),
            Family::Decorated { core, core_m, extra } => write!(f, "decorated({core}, {core_m}, {extra})"),
        }
    }
}

/// Random recursive tree: each vertex joins a uniformly chosen earlier one,
/// under a random labelling.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut label: Vec<u32> = (0..n as u32).collect();
    label.shuffle(rng);
    let edges: Vec<(u32, u32)> = (1..n).map(|i| (label[rng.gen_range(0..i)], label[i])).collect();
    Graph::from_edges(n, edges).expect("tree edges are valid")
}

/// Attaches `extra` new vertices, each to a uniformly chosen existing one.
pub fn grow_trees<R: Rng>(g: &mut Graph, extra: usize, rng: &mut R) {
    let mut pool: Vec<Vertex> = g.vertices().collect();
    for _ in 0..extra {
        let at = pool[rng.gen_range(0..pool.len())];
        let w = g.add_vertex();
        g.add_edge(at, w).expect("fresh vertex");
        pool.push(w);
    }
}

/// 2-connected graph with `n` vertices and `m` edges from an ear
/// decomposition: a starting cycle, then `m - n` ears sharing the remaining
/// vertices, chords last. Vertex ids are shuffled.
pub fn random_2connected<R: Rng>(n: usize, m: usize, rng: &mut R) -> Graph {
    let ears = m - n;
    // Starting cycle between 3 and about n / (ears + 1) vertices.
    let start = (n / (ears + 1)).clamp(3, n);
    let spare = n - start;
    // Split `spare` interior vertices over `ears` ears at random cut points.
    let mut inner = vec![0usize; ears];
    if ears > 0 {
        for _ in 0..spare {
            inner[rng.gen_range(0..ears)] += 1;
        }
    }
    inner.sort_unstable_by(|a, b| b.cmp(a));
    let mut label: Vec<u32> = (0..n as u32).collect();
    label.shuffle(rng);
    let mut g = Graph::new(n);
    let v = |i: usize| Vertex(label[i]);
    for i in 0..start {
        g.add_edge(v(i), v((i + 1) % start)).expect("cycle edge");
    }
    let mut placed = start;
    let mut chords = 0;
    for &t in &inner {
        if t == 0 {
            chords += 1;
            continue;
        }
        let a = rng.gen_range(0..placed);
        let mut b = rng.gen_range(0..placed);
        while b == a {
            b = rng.gen_range(0..placed);
        }
        let mut prev = v(a);
        for i in placed..placed + t {
            g.add_edge(prev, v(i)).expect("ear edge");
            prev = v(i);
        }
        g.add_edge(prev, v(b)).expect("ear edge");
        placed += t;
    }
    add_chords(&mut g, chords, rng);
    g
}

fn add_chords<R: Rng>(g: &mut Graph, count: usize, rng: &mut R) {
    let n = g.order();
    let mut left = count;
    // Rejection sampling while the graph is sparse, then exhaustive choice.
    let mut misses = 0;
    while left > 0 && misses < 64 {
        let a = Vertex(rng.gen_range(0..n as u32));
        let b = Vertex(rng.gen_range(0..n as u32));
        if a != b && !g.has_edge(a, b) {
            g.add_edge(a, b).expect("non-edge");
            left -= 1;
            misses = 0;
        } else {
            misses += 1;
        }
    }
    if left > 0 {
        let mut free: Vec<(Vertex, Vertex)> = g
            .vertices()
            .flat_map(|a| g.vertices().filter(move |&b| a < b).map(move |b| (a, b)))
            .filter(|&(a, b)| !g.has_edge(a, b))
            .collect();
        free.shuffle(rng);
        for (a, b) in free.into_iter().take(left) {
            g.add_edge(a, b).expect("non-edge");
        }
    }
}

/// A random connected graph on `size` vertices: a random tree plus each
/// remaining pair with probability 1/4.
fn random_connected<R: Rng>(size: usize, rng: &mut R) -> Vec<(usize, usize)> {
    let tree = random_tree(size, rng);
    let mut edges: Vec<(usize, usize)> = tree.edges().map(|(a, b)| (a.index(), b.index())).collect();
    for a in 0..size {
        for b in a + 1..size {
            if !tree.has_edge(Vertex(a as u32), Vertex(b as u32)) && rng.gen_bool(0.25) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Blows each cycle vertex up into a connected set of the given size and
/// joins consecutive sets by one or two random edges. Returns the graph and
/// the planted witness, which needs `sum(size - 1)` contractions.
pub fn blown_cycle<R: Rng>(sizes: &[usize], rng: &mut R) -> (Graph, WitnessStructure) {
    let n: usize = sizes.iter().sum();
    let mut g = Graph::new(n);
    let mut sets: Vec<Vec<Vertex>> = Vec::with_capacity(sizes.len());
    let mut next = 0u32;
    for &size in sizes {
        let ids: Vec<Vertex> = (next..next + size as u32).map(Vertex).collect();
        for (a, b) in random_connected(size, rng) {
            g.add_edge(ids[a], ids[b]).expect("set edge");
        }
        next += size as u32;
        sets.push(ids);
    }
    for i in 0..sets.len() {
        let (a, b) = (&sets[i], &sets[(i + 1) % sets.len()]);
        let links = if a.len() * b.len() > 1 { rng.gen_range(1..=2) } else { 1 };
        let mut added = 0;
        while added < links {
            let x = a[rng.gen_range(0..a.len())];
            let y = b[rng.gen_range(0..b.len())];
            if g.add_edge(x, y).expect("cross edge") {
                added += 1;
            }
        }
    }
    let witness = WitnessStructure {
        target: TargetKind::Cycle,
        sets,
        endpoints: None,
    };
    (g, witness)
}

/// Two hubs (ids 0 and 1) joined by internally disjoint paths with `a`, `b`
/// and `c` edges.
pub fn theta(a: usize, b: usize, c: usize) -> Graph {
    let mut g = Graph::new(2);
    for len in [a, b, c] {
        let mut prev = Vertex(0);
        for _ in 1..len {
            let w = g.add_vertex();
            g.add_edge(prev, w).expect("theta edge");
            prev = w;
        }
        g.add_edge(prev, Vertex(1)).expect("theta edge");
    }
    g
}
