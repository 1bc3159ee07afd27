//! Ordered records of reduction-rule applications, and their replay.
//!
//! Each record lists the elementary contractions it performed, so replaying
//! a trace against the input graph rebuilds the kernel without searching
//! for rule sites again.

use crate::cycle_kernel::assemble_rule4;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::pcfe_kernel::build_h_at;
use crate::instance::PcfeInstance;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Disconnected,
    Tree,
    /// Budget below 2, decided directly.
    SmallBudget,
    NegativeBudget,
    RuleA,
    RuleB,
    /// Path fixpoint larger than `3k + 4`.
    PathBound,
    /// As `PathBound`, but a Rule B site was skipped to keep an anchor.
    ProtectedBlock,
    Rule1,
    Rule2,
    Rule3,
    Rule4,
    /// 2-connected fixpoint with at least `5k + 4` vertices.
    Claim,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleRecord {
    pub rule: Rule,
    pub site: String,
    pub k_before: i64,
    pub k_after: i64,
    /// `(removed, survivor)` pairs in the order they were contracted.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub contractions: Vec<(Vertex, Vertex)>,
    /// Set on records that end the reduction with a decision.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule4: Option<Box<Rule4Record>>,
}

impl RuleRecord {
    pub(crate) fn decision(rule: Rule, site: impl Into<String>, k: i64, verdict: Verdict) -> Self {
        RuleRecord {
            rule,
            site: site.into(),
            k_before: k,
            k_after: k,
            contractions: Vec::new(),
            verdict: Some(verdict),
            rule4: None,
        }
    }

    pub(crate) fn contraction(
        rule: Rule,
        site: impl Into<String>,
        k_before: i64,
        k_after: i64,
        contractions: Vec<(Vertex, Vertex)>,
    ) -> Self {
        RuleRecord {
            rule,
            site: site.into(),
            k_before,
            k_after,
            contractions,
            verdict: None,
            rule4: None,
        }
    }
}

/// Everything needed to rebuild a Rule 4 kernel from the graph it split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule4Record {
    pub x: Vertex,
    pub y: Vertex,
    pub u1: Vertex,
    pub v1: Vertex,
    pub u2: Vertex,
    pub v2: Vertex,
    /// Side whose kernel was taken at the halved budget.
    pub half_side: Side,
    pub half_k: usize,
    pub full_k: usize,
    /// First fresh id for the pendant paths of side one and side two.
    pub fresh: [u32; 2],
    pub half: ReductionTrace,
    pub full: ReductionTrace,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReductionTrace {
    pub records: Vec<RuleRecord>,
}

/// Outcome of replaying a trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Replayed {
    No,
    Yes,
    Reduced { g: Graph, k: i64 },
}

impl ReductionTrace {
    pub fn push(&mut self, record: RuleRecord) {
        self.records.push(record);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Count of records per rule, in first-seen order.
    pub fn rule_counts(&self) -> Vec<(Rule, usize)> {
        let mut out: Vec<(Rule, usize)> = Vec::new();
        for r in &self.records {
            match out.iter_mut().find(|(rule, _)| *rule == r.rule) {
                Some((_, c)) => *c += 1,
                None => out.push((r.rule, 1)),
            }
        }
        out
    }

    /// True when every record starts from the budget the previous one left.
    pub fn budgets_chain(&self, k: i64) -> bool {
        let mut cur = k;
        for r in &self.records {
            if r.k_before != cur {
                return false;
            }
            cur = r.k_after;
        }
        true
    }

    /// Re-applies the recorded contractions to `(g, k)`.
    pub fn replay(&self, g: &Graph, k: i64) -> Result<Replayed> {
        let mut g = g.clone();
        let mut k = k;
        for (i, r) in self.records.iter().enumerate() {
            if r.k_before != k {
                return Err(Error::Replay(format!(
                    "record {i} expects budget {} but replay holds {k}",
                    r.k_before
                )));
            }
            for &(removed, survivor) in &r.contractions {
                g.contract_in_place(removed, survivor)
                    .map_err(|e| Error::Replay(format!("record {i}: {e}")))?;
            }
            if let Some(rec) = &r.rule4 {
                g = replay_rule4(&g, rec)?;
            }
            k = r.k_after;
            match r.verdict {
                Some(Verdict::No) => return Ok(Replayed::No),
                Some(Verdict::Yes) => return Ok(Replayed::Yes),
                None => {}
            }
        }
        Ok(Replayed::Reduced { g, k })
    }
}

fn replay_pcfe_side(
    g: &Graph,
    side_set: &[Vertex],
    u: Vertex,
    v: Vertex,
    k: usize,
    fresh: u32,
    trace: &ReductionTrace,
) -> Result<PcfeInstance> {
    let sub = g.induced_subgraph(side_set);
    let inst = PcfeInstance::new(sub, u, v, k);
    let (h, u_tip, v_tip) = build_h_at(&inst, fresh)?;
    match trace.replay(&h, k as i64)? {
        Replayed::Reduced { g, k } => Ok(PcfeInstance::new(g, u_tip, v_tip, k as usize)),
        _ => Err(Error::Replay("rule 4 side trace does not end in a kernel".into())),
    }
}

fn replay_rule4(g: &Graph, rec: &Rule4Record) -> Result<Graph> {
    let rest = g.without(&[rec.x, rec.y]);
    let comps = rest.components();
    let find = |w: Vertex| {
        comps
            .iter()
            .find(|c| c.binary_search(&w).is_ok())
            .cloned()
            .ok_or_else(|| Error::Replay(format!("{w} missing after removing the pair")))
    };
    let sides = [find(rec.u1)?, find(rec.u2)?];
    let anchors = [(rec.u1, rec.v1), (rec.u2, rec.v2)];
    let idx = |s: Side| match s {
        Side::One => 0,
        Side::Two => 1,
    };
    let h = idx(rec.half_side);
    let f = idx(rec.half_side.other());
    let half = replay_pcfe_side(g, &sides[h], anchors[h].0, anchors[h].1, rec.half_k, rec.fresh[h], &rec.half)?;
    let full = replay_pcfe_side(g, &sides[f], anchors[f].0, anchors[f].1, rec.full_k, rec.fresh[f], &rec.full)?;
    assemble_rule4(g, rec.x, rec.y, &half, &full)
}
