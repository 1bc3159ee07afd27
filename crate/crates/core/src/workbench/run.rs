//! Running one instance: kernelize, solve exactly, or cross-check the two.

use crate::cycle_kernel::{kernelize_cycle_with, BoundUsed};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::{Instance, ProblemKind, Reduced};
use crate::oracle::{Oracle, OracleResult};
use crate::par::Execution;
use crate::path_kernel::{kernelize_path, path_bound};
use crate::pcfe_kernel::{build_h, kernelize_pcfe};
use crate::trace::{ReductionTrace, Replayed};
use crate::workbench::format::InstanceFile;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Kernelize,
    Solve,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Kernel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Check {
    Pass,
    Fail,
}

/// Any kernelizer's output, with the bound its size is held to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernelized {
    pub result: Reduced<Instance>,
    pub trace: ReductionTrace,
    /// Label of the size guarantee, e.g. `5k+4`.
    pub bound: String,
    /// Largest kernel order the guarantee allows, when a kernel is returned.
    pub limit: Option<usize>,
}

impl Kernelized {
    pub fn decision(&self) -> Decision {
        match self.result {
            Reduced::Yes => Decision::Yes,
            Reduced::No => Decision::No,
            Reduced::Kernel(_) => Decision::Kernel,
        }
    }

    pub fn within_bound(&self) -> bool {
        match (&self.result, self.limit) {
            (Reduced::Kernel(i), Some(limit)) => i.graph().order() <= limit,
            (Reduced::Kernel(_), None) => false,
            _ => true,
        }
    }
}

fn bound_label(b: BoundUsed) -> String {
    serde_json::to_value(b)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

/// Routes an instance to the kernelizer for its problem.
pub fn kernelize(inst: &Instance, exec: Execution) -> Result<Kernelized> {
    Ok(match inst {
        Instance::Cycle(c) => {
            let out = kernelize_cycle_with(c, exec)?;
            let limit = match &out.result {
                Reduced::Kernel(kern) => out.bound_used.limit(kern.k).map(|l| l.max(0) as usize),
                _ => None,
            };
            Kernelized {
                result: out.result.map(Instance::Cycle),
                trace: out.trace,
                bound: bound_label(out.bound_used),
                limit,
            }
        }
        Instance::Path(p) => {
            let out = kernelize_path(p, &[])?;
            Kernelized {
                result: out.result.map(Instance::Path),
                trace: out.trace,
                bound: "3k+4".into(),
                limit: Some(path_bound(p.k)),
            }
        }
        Instance::Pcfe(p) => {
            let out = kernelize_pcfe(p)?;
            Kernelized {
                result: out.result.map(Instance::Pcfe),
                trace: out.trace,
                bound: "3k+4".into(),
                limit: Some(path_bound(p.k)),
            }
        }
    })
}

/// Replays the trace of `k` against `inst` and checks it rebuilds the
/// kernel exactly (or reaches the same decision).
pub fn replay_matches(inst: &Instance, k: &Kernelized) -> Result<bool> {
    let (start, budget): (Graph, i64) = match inst {
        Instance::Cycle(c) => (c.g.clone(), c.k),
        Instance::Path(p) => (p.g.clone(), p.k as i64),
        Instance::Pcfe(p) => (build_h(p)?.0, p.k as i64),
    };
    let replayed = k.trace.replay(&start, budget)?;
    Ok(match (&replayed, &k.result) {
        (Replayed::No, Reduced::No) | (Replayed::Yes, Reduced::Yes) => true,
        (Replayed::Reduced { g, k: kk }, Reduced::Kernel(kern)) => g == kern.graph() && *kk == kern.budget(),
        _ => false,
    })
}

/// The kernelizer's answer, deciding a returned kernel with the oracle.
pub fn decided_by_kernel(oracle: &Oracle, k: &Kernelized) -> Result<bool> {
    match &k.result {
        Reduced::Yes => Ok(true),
        Reduced::No => Ok(false),
        Reduced::Kernel(kern) => oracle.decide(kern),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub decision: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimum: Option<usize>,
    pub explored: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub vertices_before: usize,
    pub edges_before: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices_after: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges_after: Option<usize>,
    pub rule_counts: BTreeMap<String, usize>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub mode: Mode,
    pub kind: ProblemKind,
    pub k: u64,
    pub decision: Decision,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<InstanceFile>,
    /// Input vertex (1-indexed) of each kernel vertex, or 0 for vertices the
    /// kernelizer created.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_vertices: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    pub trace: ReductionTrace,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    /// Verify mode: the oracle's answer on the kernel.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_oracle: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replay_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<Check>,
    pub stats: Stats,
}

impl RunReport {
    /// One-line human summary.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{:?} {:?} k={}: {:?}",
            self.mode, self.kind, self.k, self.decision
        )
        .to_lowercase();
        if let Some(n) = self.stats.vertices_after {
            s += &format!(" ({} -> {} vertices, bound {})", self.stats.vertices_before, n, self.bound.as_deref().unwrap_or("-"));
        }
        if let Some(o) = &self.oracle {
            s += &format!(", oracle {}", if o.decision { "yes" } else { "no" });
            if let Some(opt) = o.optimum {
                s += &format!(" (optimum {opt})");
            }
        }
        if let Some(c) = self.check {
            s += &format!(", {c:?}").to_uppercase();
        }
        s += &format!(", {:.1} ms", self.stats.wall_ms);
        s
    }
}

fn oracle_solve(oracle: &Oracle, inst: &Instance) -> Result<OracleResult> {
    match inst {
        Instance::Cycle(c) => oracle.min_to_cycle(&c.g),
        Instance::Path(p) => oracle.min_to_path(&p.g),
        Instance::Pcfe(p) => oracle.min_pcfe(&p.g, p.u, p.v),
    }
}

fn rule_counts(trace: &ReductionTrace) -> BTreeMap<String, usize> {
    trace
        .rule_counts()
        .into_iter()
        .map(|(r, c)| (r.to_string(), c))
        .collect()
}

/// Runs one instance file. Oracle modes refuse graphs above `oracle_cap`
/// vertices with [`Error::OracleCap`].
pub fn run(file: &InstanceFile, mode: Mode, oracle_cap: usize, exec: Execution) -> Result<RunReport> {
    let start = Instant::now();
    let inst = file.to_instance()?;
    let g = inst.graph();
    let oracle = Oracle::new(oracle_cap);
    if mode != Mode::Kernelize && g.order() > oracle_cap {
        return Err(Error::OracleCap {
            n: g.order(),
            cap: oracle_cap,
        });
    }
    let mut report = RunReport {
        mode,
        kind: file.kind,
        k: file.k,
        decision: Decision::No,
        kernel: None,
        kernel_vertices: None,
        bound: None,
        trace: ReductionTrace::default(),
        oracle: None,
        kernel_oracle: None,
        replay_ok: None,
        check: None,
        stats: Stats {
            vertices_before: g.order(),
            edges_before: g.size(),
            vertices_after: None,
            edges_after: None,
            rule_counts: BTreeMap::new(),
            wall_ms: 0.0,
        },
    };
    if mode == Mode::Solve {
        let found = oracle_solve(&oracle, &inst)?;
        let yes = found.optimum.is_some_and(|opt| opt as u64 <= file.k);
        report.decision = if yes { Decision::Yes } else { Decision::No };
        report.oracle = Some(OracleReport {
            decision: yes,
            optimum: found.optimum,
            explored: found.explored,
        });
    } else {
        let kernelized = kernelize(&inst, exec)?;
        report.decision = kernelized.decision();
        report.stats.rule_counts = rule_counts(&kernelized.trace);
        if let Reduced::Kernel(kern) = &kernelized.result {
            let (kfile, ids) = InstanceFile::from_instance(kern);
            report.stats.vertices_after = Some(kfile.n as usize);
            report.stats.edges_after = Some(kfile.edges.len());
            report.kernel_vertices = Some(ids.iter().map(|v| input_label(g, *v)).collect());
            report.kernel = Some(kfile);
            report.bound = Some(kernelized.bound.clone());
        }
        if mode == Mode::Verify {
            let truth = oracle.decide(&inst)?;
            let from_kernel = decided_by_kernel(&oracle, &kernelized)?;
            let replay = replay_matches(&inst, &kernelized)?;
            report.oracle = Some(OracleReport {
                decision: truth,
                optimum: None,
                explored: 0,
            });
            if matches!(kernelized.result, Reduced::Kernel(_)) {
                report.kernel_oracle = Some(from_kernel);
            }
            report.replay_ok = Some(replay);
            let ok = truth == from_kernel && replay && kernelized.within_bound();
            report.check = Some(if ok { Check::Pass } else { Check::Fail });
        }
        report.trace = kernelized.trace;
    }
    report.stats.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn input_label(g: &Graph, v: Vertex) -> u32 {
    if v.index() < g.id_bound() {
        v.0 + 1
    } else {
        0
    }
}
