//! Family × budget grids: kernel sizes against their bounds, and agreement
//! with the oracle where it can run.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{CycleInstance, Instance, PathInstance, ProblemKind, Reduced};
use crate::oracle::Oracle;
use crate::par::{self, Execution};
use crate::workbench::enumerate::connected_graphs_up_to;
use crate::workbench::generate::Family;
use crate::workbench::run::{decided_by_kernel, kernelize, replay_matches, Decision, Mode};
use serde::{Deserialize, Serialize};

/// Where the graphs of a sweep come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// Every connected graph up to isomorphism with at most this many vertices.
    Exhaustive(usize),
    /// `count` instances of a generated family, seeds `seed..seed + count`.
    Generated { family: Family, count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub source: Source,
    pub kind: ProblemKind,
    pub k_min: u64,
    pub k_max: u64,
    pub mode: Mode,
    pub oracle_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub index: usize,
    pub label: String,
    pub n: usize,
    pub m: usize,
    pub k: u64,
    pub decision: Decision,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_n: Option<usize>,
    pub bound: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<usize>,
    pub within_bound: bool,
    pub replay_ok: bool,
    /// Oracle agreement, in verify mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SweepRow {
    pub fn failed(&self) -> bool {
        self.error.is_some() || !self.within_bound || !self.replay_ok || self.agrees == Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetSummary {
    pub k: u64,
    pub instances: usize,
    pub kernels: usize,
    pub max_kernel_n: usize,
    pub bound_violations: usize,
    pub disagreements: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub by_k: Vec<BudgetSummary>,
    pub failures: usize,
}

impl SweepReport {
    /// Human-readable table, one line per budget.
    pub fn table(&self) -> String {
        let mut out = String::from("   k  instances  kernels  max|K|  bound-viol  disagree  fail\n");
        for s in &self.by_k {
            out += &format!(
                "{:>4}  {:>9}  {:>7}  {:>6}  {:>10}  {:>8}  {:>4}\n",
                s.k, s.instances, s.kernels, s.max_kernel_n, s.bound_violations, s.disagreements, s.failures
            );
        }
        out
    }
}

fn instance(kind: ProblemKind, g: Graph, k: u64) -> Instance {
    match kind {
        ProblemKind::Path => Instance::Path(PathInstance::new(g, k as usize)),
        _ => Instance::Cycle(CycleInstance::new(g, k as i64)),
    }
}

fn graphs(source: &Source) -> Result<Vec<(String, Graph)>> {
    Ok(match source {
        Source::Exhaustive(n) => connected_graphs_up_to(*n)
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("connected#{i}"), g))
            .collect(),
        Source::Generated { family, count, seed } => (0..*count as u64)
            .map(|i| Ok((format!("{family} seed {}", seed + i), family.generate(seed + i)?)))
            .collect::<Result<_>>()?,
    })
}

fn run_row(index: usize, label: &str, inst: &Instance, spec: &SweepSpec) -> SweepRow {
    let g = inst.graph();
    let mut row = SweepRow {
        index,
        label: label.to_owned(),
        n: g.order(),
        m: g.size(),
        k: inst.budget() as u64,
        decision: Decision::No,
        kernel_n: None,
        bound: String::new(),
        limit: None,
        within_bound: true,
        replay_ok: false,
        agrees: None,
        error: None,
    };
    let result = (|| -> Result<()> {
        // One thread per instance; parallelism is across instances.
        let k = kernelize(inst, Execution::Sequential)?;
        row.decision = k.decision();
        row.bound = k.bound.clone();
        row.limit = k.limit;
        row.within_bound = k.within_bound();
        if let Reduced::Kernel(kern) = &k.result {
            row.kernel_n = Some(kern.graph().order());
        }
        row.replay_ok = replay_matches(inst, &k)?;
        if spec.mode == Mode::Verify {
            let oracle = Oracle::new(spec.oracle_cap);
            row.agrees = Some(oracle.decide(inst)? == decided_by_kernel(&oracle, &k)?);
        }
        Ok(())
    })();
    if let Err(e) = result {
        row.error = Some(e.to_string());
    }
    row
}

/// Runs the grid. Rows are ordered by graph, then budget, whatever the
/// execution mode.
pub fn sweep(spec: &SweepSpec, exec: Execution) -> Result<SweepReport> {
    if spec.kind == ProblemKind::Pcfe {
        return Err(Error::InvalidParams("sweeps cover cycle and path instances".into()));
    }
    let graphs = graphs(&spec.source)?;
    let jobs: Vec<(String, Instance)> = graphs
        .iter()
        .flat_map(|(label, g)| (spec.k_min..=spec.k_max).map(move |k| (label.clone(), instance(spec.kind, g.clone(), k))))
        .collect();
    let indexed: Vec<(usize, &(String, Instance))> = jobs.iter().enumerate().collect();
    let rows = par::map(exec, &indexed, |(i, (label, inst))| run_row(*i, label, inst, spec));
    let by_k = (spec.k_min..=spec.k_max)
        .map(|k| {
            let at: Vec<&SweepRow> = rows.iter().filter(|r| r.k == k).collect();
            BudgetSummary {
                k,
                instances: at.len(),
                kernels: at.iter().filter(|r| r.kernel_n.is_some()).count(),
                max_kernel_n: at.iter().filter_map(|r| r.kernel_n).max().unwrap_or(0),
                bound_violations: at.iter().filter(|r| !r.within_bound).count(),
                disagreements: at.iter().filter(|r| r.agrees == Some(false)).count(),
                failures: at.iter().filter(|r| r.failed()).count(),
            }
        })
        .collect();
    let failures = rows.iter().filter(|r| r.failed()).count();
    Ok(SweepReport { rows, by_k, failures })
}
