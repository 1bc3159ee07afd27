//! Line-oriented instance files.
//!
//! ```text
//! c optional comments anywhere
//! p <cycle|path|pcfe> <n> <m> <k>
//! e <u> <v>          (m lines, 1-indexed)
//! a <u> <v>          (pcfe only)
//! ```

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::{CycleInstance, Instance, PathInstance, PcfeInstance, ProblemKind};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub kind: ProblemKind,
    pub n: u32,
    pub k: u64,
    /// 1-indexed endpoint pairs in file order.
    pub edges: Vec<(u32, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchors: Option<(u32, u32)>,
}

fn kind_name(kind: ProblemKind) -> &'static str {
    match kind {
        ProblemKind::Cycle => "cycle",
        ProblemKind::Path => "path",
        ProblemKind::Pcfe => "pcfe",
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn numbers<const N: usize>(line: usize, fields: &[&str]) -> Result<[u64; N]> {
    if fields.len() != N {
        return Err(err(line, format!("expected {N} numbers, found {}", fields.len())));
    }
    let mut out = [0; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| err(line, format!("`{f}` is not a nonnegative integer")))?;
    }
    Ok(out)
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile> {
        let mut file: Option<InstanceFile> = None;
        let mut m = 0usize;
        let mut seen = std::collections::HashSet::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let fields: Vec<&str> = raw.split_whitespace().collect();
            let Some((&tag, rest)) = fields.split_first() else {
                continue;
            };
            match (tag, file.as_mut()) {
                ("c", _) => {}
                ("p", None) => {
                    let Some((&kind, nums)) = rest.split_first() else {
                        return Err(err(line, "header needs a problem kind"));
                    };
                    let kind = match kind {
                        "cycle" => ProblemKind::Cycle,
                        "path" => ProblemKind::Path,
                        "pcfe" => ProblemKind::Pcfe,
                        other => return Err(err(line, format!("unknown problem kind `{other}`"))),
                    };
                    let [n, edges, k] = numbers::<3>(line, nums)?;
                    if n == 0 || n > u64::from(u32::MAX) {
                        return Err(err(line, "vertex count out of range"));
                    }
                    m = edges as usize;
                    file = Some(InstanceFile {
                        kind,
                        n: n as u32,
                        k,
                        edges: Vec::with_capacity(m.min(1 << 20)),
                        anchors: None,
                    });
                }
                ("p", Some(_)) => return Err(err(line, "second header line")),
                (_, None) => return Err(err(line, "expected the `p` header first")),
                ("e", Some(f)) => {
                    let [u, v] = numbers::<2>(line, rest)?;
                    let (u, v) = (f.vertex(line, u)?, f.vertex(line, v)?);
                    if u == v {
                        return Err(err(line, format!("self-loop at {u}")));
                    }
                    if !seen.insert((u.min(v), u.max(v))) {
                        return Err(err(line, format!("duplicate edge {u} {v}")));
                    }
                    if f.edges.len() == m {
                        return Err(err(line, format!("more than the {m} declared edges")));
                    }
                    f.edges.push((u, v));
                }
                ("a", Some(f)) => {
                    if f.kind != ProblemKind::Pcfe {
                        return Err(err(line, "anchors are only allowed for pcfe"));
                    }
                    if f.anchors.is_some() {
                        return Err(err(line, "second anchor line"));
                    }
                    let [u, v] = numbers::<2>(line, rest)?;
                    let (u, v) = (f.vertex(line, u)?, f.vertex(line, v)?);
                    if u == v {
                        return Err(err(line, "anchors must be distinct"));
                    }
                    f.anchors = Some((u, v));
                }
                (other, Some(_)) => return Err(err(line, format!("unknown line type `{other}`"))),
            }
        }
        let end = last_line.max(1);
        let file = file.ok_or_else(|| err(end, "missing `p` header"))?;
        if file.edges.len() != m {
            return Err(err(end, format!("declared {m} edges, found {}", file.edges.len())));
        }
        if file.kind == ProblemKind::Pcfe && file.anchors.is_none() {
            return Err(err(end, "pcfe instance without an `a` line"));
        }
        Ok(file)
    }

    fn vertex(&self, line: usize, x: u64) -> Result<u32> {
        if x == 0 || x > u64::from(self.n) {
            return Err(err(line, format!("vertex {x} outside 1..={}", self.n)));
        }
        Ok(x as u32)
    }

    /// Canonical text. Comments are not preserved.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(16 * (self.edges.len() + 2));
        let _ = writeln!(out, "p {} {} {} {}", kind_name(self.kind), self.n, self.edges.len(), self.k);
        for (u, v) in &self.edges {
            let _ = writeln!(out, "e {u} {v}");
        }
        if let Some((u, v)) = self.anchors {
            let _ = writeln!(out, "a {u} {v}");
        }
        out
    }

    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.n as usize, self.edges.iter().map(|&(u, v)| (u - 1, v - 1)))
            .expect("validated on parse")
    }

    /// The instance on vertices `0..n` (file vertex `i` is `Vertex(i - 1)`).
    pub fn to_instance(&self) -> Result<Instance> {
        let g = self.graph();
        let k = self.k;
        Ok(match self.kind {
            ProblemKind::Cycle => {
                let k = i64::try_from(k).map_err(|_| Error::InvalidParams("budget too large".into()))?;
                Instance::Cycle(CycleInstance::new(g, k))
            }
            ProblemKind::Path => Instance::Path(PathInstance::new(g, k as usize)),
            ProblemKind::Pcfe => {
                let (u, v) = self.anchors.ok_or_else(|| Error::InvalidParams("pcfe needs anchors".into()))?;
                Instance::Pcfe(PcfeInstance::new(g, Vertex(u - 1), Vertex(v - 1), k as usize))
            }
        })
    }

    /// File for an instance whose vertex ids may have gaps. Vertices are
    /// numbered by ascending id; the returned ids give the original id of
    /// file vertex `i + 1`.
    pub fn from_instance(inst: &Instance) -> (InstanceFile, Vec<Vertex>) {
        let (g, ids) = inst.graph().compacted();
        let pos = |v: Vertex| ids.binary_search(&v).expect("anchor is a live vertex") as u32 + 1;
        let anchors = match inst {
            Instance::Pcfe(p) => Some((pos(p.u), pos(p.v))),
            _ => None,
        };
        let file = InstanceFile {
            kind: inst.kind(),
            n: g.order() as u32,
            k: inst.budget().max(0) as u64,
            edges: g.edges().map(|(u, v)| (u.0 + 1, v.0 + 1)).collect(),
            anchors,
        };
        (file, ids)
    }
}
