//! Witness structures: partitions of a graph's vertices certifying that the
//! graph contracts onto a path or a cycle.

use crate::graph::{Graph, Vertex};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetKind {
    Path,
    Cycle,
}

/// Ordered witness sets. For cycles the order is cyclic; for paths it runs
/// from one end to the other and `endpoints` names the two end sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStructure {
    pub target: TargetKind,
    pub sets: Vec<Vec<Vertex>>,
    pub endpoints: Option<(usize, usize)>,
}

impl WitnessStructure {
    /// Every vertex of `g` in its own set, in the given order.
    pub fn identity(target: TargetKind, order: &[Vertex]) -> Self {
        WitnessStructure {
            target,
            sets: order.iter().map(|&v| vec![v]).collect(),
            endpoints: match target {
                TargetKind::Path => Some((0, order.len().saturating_sub(1))),
                TargetKind::Cycle => None,
            },
        }
    }

    /// Number of contractions realized: vertices minus witness sets.
    pub fn contractions(&self) -> usize {
        self.sets.iter().map(Vec::len).sum::<usize>() - self.sets.len()
    }

    pub fn set_of(&self, v: Vertex) -> Option<usize> {
        self.sets.iter().position(|s| s.contains(&v))
    }

    /// Checks the three witness conditions against `g`: the sets partition
    /// `V(g)`, each induces a connected subgraph, and two sets are joined by
    /// an edge exactly when they are consecutive in the target.
    pub fn validate(&self, g: &Graph) -> bool {
        let count = self.sets.len();
        let min_sets = match self.target {
            TargetKind::Path => 1,
            TargetKind::Cycle => 3,
        };
        if count < min_sets {
            return false;
        }
        let mut owner = vec![usize::MAX; g.id_bound()];
        let mut covered = 0;
        for (i, set) in self.sets.iter().enumerate() {
            if set.is_empty() {
                return false;
            }
            for &v in set {
                if !g.contains(v) || owner[v.index()] != usize::MAX {
                    return false;
                }
                owner[v.index()] = i;
                covered += 1;
            }
        }
        if covered != g.order() {
            return false;
        }
        if !self.sets.iter().all(|s| g.induced_subgraph(s).is_connected()) {
            return false;
        }
        let consecutive = |a: usize, b: usize| {
            let d = a.abs_diff(b);
            match self.target {
                TargetKind::Path => d == 1,
                TargetKind::Cycle => d == 1 || d == count - 1,
            }
        };
        let mut joined = vec![false; count * count];
        for (a, b) in g.edges() {
            let (sa, sb) = (owner[a.index()], owner[b.index()]);
            if sa != sb {
                if !consecutive(sa, sb) {
                    return false;
                }
                joined[sa * count + sb] = true;
                joined[sb * count + sa] = true;
            }
        }
        let all_joined = (0..count).all(|i| {
            let next = match self.target {
                TargetKind::Path if i + 1 == count => return true,
                _ => (i + 1) % count,
            };
            joined[i * count + next]
        });
        if !all_joined {
            return false;
        }
        match (self.target, self.endpoints) {
            (TargetKind::Path, Some((a, b))) => {
                let ends = (a == 0 && b == count - 1) || (b == 0 && a == count - 1);
                ends && (a != b || count == 1)
            }
            (TargetKind::Cycle, Some(_)) => false,
            _ => true,
        }
    }
}

/// Free-function form of [`WitnessStructure::validate`].
pub fn validate_witness(original: &Graph, w: &WitnessStructure) -> bool {
    w.validate(original)
}
