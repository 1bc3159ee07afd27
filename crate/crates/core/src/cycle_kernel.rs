//! Cycle Contraction kernelization.
//!
//! Rules 1 to 3 shrink the instance along its block structure until it is
//! 2-connected or small. At a 2-connected fixpoint, a pair of degree-2
//! vertices splitting the graph into two large sides lets Rule 4 replace
//! each side by a fixed-endvertex path kernel. Otherwise a large fixpoint is
//! rejected outright.

use crate::error::{Error, Result};
use crate::graph::{is_k_connected, BlockDecomposition, Connectivity, Graph, Vertex};
use crate::instance::{CycleInstance, PcfeInstance, Reduced};
use crate::par::{self, Execution};
use crate::path_kernel::KernelOutcome;
use crate::pcfe_kernel::kernelize_pcfe_at;
use crate::trace::{ReductionTrace, Rule, Rule4Record, RuleRecord, Side, Verdict};
use serde::{Deserialize, Serialize};

/// The size guarantee that applies to a returned kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundUsed {
    /// Not 2-connected after Rules 1 to 3.
    #[serde(rename = "2k+2")]
    TwoKPlus2,
    /// 3-connected and not rejected by Rule 1.
    #[serde(rename = "2k+4")]
    TwoKPlus4,
    #[serde(rename = "5k+4")]
    FiveKPlus4,
    #[serde(rename = "4.5k+10")]
    Rule4,
    /// Decided without producing a kernel.
    #[serde(rename = "direct")]
    Direct,
}

impl BoundUsed {
    /// Largest kernel order allowed at budget `k`, if any.
    pub fn limit(self, k: i64) -> Option<i64> {
        match self {
            BoundUsed::TwoKPlus2 => Some(2 * k + 2),
            BoundUsed::TwoKPlus4 => Some(2 * k + 4),
            BoundUsed::FiveKPlus4 => Some(5 * k + 4),
            // 3 * floor(k / 2) + 4 for one side, 3k + 4 for the other, plus x and y.
            BoundUsed::Rule4 => Some(3 * (k / 2) + 3 * k + 10),
            BoundUsed::Direct => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleKernelOutcome {
    pub result: Reduced<CycleInstance>,
    pub trace: ReductionTrace,
    pub bound_used: BoundUsed,
}

/// Two non-adjacent degree-2 vertices whose removal leaves two large sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule4Site {
    pub x: Vertex,
    pub y: Vertex,
    pub g1: Vec<Vertex>,
    pub g2: Vec<Vertex>,
    pub u1: Vertex,
    pub v1: Vertex,
    pub u2: Vertex,
    pub v2: Vertex,
}

/// Result of one of Rules 2 and 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleEffect {
    No,
    Reduced {
        inst: CycleInstance,
        /// `(removed, survivor)` pairs in order.
        contractions: Vec<(Vertex, Vertex)>,
    },
}

/// Rule 1: a 3-connected graph on more than `2k + 4` vertices is a NO
/// instance.
pub fn rule1(inst: &CycleInstance) -> Option<Verdict> {
    let n = inst.g.order() as i64;
    (n > 2 * inst.k + 4 && is_k_connected(&inst.g, 3)).then_some(Verdict::No)
}

fn first_block(blocks: &[Vec<Vertex>], pred: impl Fn(&[Vertex]) -> bool) -> Option<&Vec<Vertex>> {
    blocks.iter().find(|b| pred(b))
}

/// Rule 2: a block on at least `k + 2` vertices must host the cycle, so
/// everything outside it is contracted onto it.
pub fn rule2(inst: &CycleInstance) -> Result<Option<RuleEffect>> {
    let n = inst.g.order();
    let k = inst.k;
    let bd = BlockDecomposition::of(&inst.g)?;
    let Some(b) = first_block(&bd.blocks, |b| b.len() as i64 >= k + 2 && b.len() < n) else {
        return Ok(None);
    };
    let outside = (n - b.len()) as i64;
    if outside > k {
        return Ok(Some(RuleEffect::No));
    }
    let rest: Vec<Vertex> = inst.g.vertices().filter(|v| b.binary_search(v).is_err()).collect();
    let mut g = inst.g.clone();
    let contractions = g.absorb_set(&rest)?;
    Ok(Some(RuleEffect::Reduced {
        inst: CycleInstance::new(g, k - outside),
        contractions,
    }))
}

/// Rule 3: a block on at most `k + 1` vertices with at least `k + 2`
/// vertices outside cannot host the cycle, so it ends up inside a single
/// witness set. It is collapsed into its smallest cut vertex at a cost of
/// `|V(B)| - 1`.
pub fn rule3(inst: &CycleInstance) -> Result<Option<RuleEffect>> {
    let n = inst.g.order() as i64;
    let k = inst.k;
    let bd = BlockDecomposition::of(&inst.g)?;
    let Some(b) = first_block(&bd.blocks, |b| {
        let size = b.len() as i64;
        size <= k + 1 && n - size >= k + 2
    }) else {
        return Ok(None);
    };
    let survivor = *b
        .iter()
        .find(|v| bd.cut_vertices.binary_search(v).is_ok())
        .expect("a proper block has a cut vertex");
    let mut g = inst.g.clone();
    let contractions = g.collapse_into(b, survivor)?;
    let k_after = k - contractions.len() as i64;
    if k_after < 0 {
        return Ok(Some(RuleEffect::No));
    }
    Ok(Some(RuleEffect::Reduced {
        inst: CycleInstance::new(g, k_after),
        contractions,
    }))
}

/// First pair of degree-2 vertices `x < y` splitting `g` into exactly two
/// sides of at least `k + 2` vertices each.
pub fn find_rule4_site(inst: &CycleInstance) -> Result<Option<Rule4Site>> {
    let g = &inst.g;
    if !is_k_connected(g, 2) {
        return Err(Error::NotTwoConnected);
    }
    let k = inst.k.max(0) as usize;
    if g.order() < 2 * (k + 2) + 2 {
        return Ok(None);
    }
    let deg2: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) == 2).collect();
    for (i, &x) in deg2.iter().enumerate() {
        let conn = Connectivity::without(g, x);
        for &y in &deg2[i + 1..] {
            if g.has_edge(x, y) {
                continue;
            }
            let sizes = conn.split_sizes(y);
            if sizes.len() == 2 && sizes.iter().all(|&s| s >= k + 2) {
                return Ok(Some(site_at(g, x, y)));
            }
        }
    }
    Ok(None)
}

fn site_at(g: &Graph, x: Vertex, y: Vertex) -> Rule4Site {
    let comps = g.without(&[x, y]).components();
    let (g1, g2) = (comps[0].clone(), comps[1].clone());
    let inside = |side: &[Vertex], w: Vertex| {
        *g.neighbours(w)
            .iter()
            .find(|z| side.binary_search(z).is_ok())
            .expect("each side touches both x and y")
    };
    Rule4Site {
        u1: inside(&g1, x),
        v1: inside(&g1, y),
        u2: inside(&g2, x),
        v2: inside(&g2, y),
        x,
        y,
        g1,
        g2,
    }
}

/// Joins two fixed-endvertex kernels into one cycle instance graph: their
/// disjoint union, plus `x` and `y` (with their origins in `g`) joined to
/// the tips.
pub fn assemble_rule4(g: &Graph, x: Vertex, y: Vertex, half: &PcfeInstance, full: &PcfeInstance) -> Result<Graph> {
    let mut r = half.g.clone();
    r.absorb_disjoint(&full.g)?;
    for w in [x, y] {
        r.insert_vertex(w, g.origin(w).to_vec())?;
    }
    r.add_edge(x, half.u)?;
    r.add_edge(x, full.u)?;
    r.add_edge(y, half.v)?;
    r.add_edge(y, full.v)?;
    Ok(r)
}

fn side_instance(g: &Graph, set: &[Vertex], u: Vertex, v: Vertex, k: usize) -> PcfeInstance {
    PcfeInstance::new(g.induced_subgraph(set), u, v, k)
}

/// Applies Rule 4 at `site`. Side one's pendant paths take fresh ids from
/// `g.id_bound()`, side two's from `2(k + 1)` further on.
pub fn apply_rule4(inst: &CycleInstance, site: &Rule4Site, exec: Execution) -> Result<(Reduced<CycleInstance>, RuleRecord)> {
    let g = &inst.g;
    let k = inst.k.max(0) as usize;
    let half_k = k / 2;
    let base1 = g.id_bound() as u32;
    let fresh = [base1, base1 + 2 * (k as u32 + 1)];
    let sides = [
        side_instance(g, &site.g1, site.u1, site.v1, k),
        side_instance(g, &site.g2, site.u2, site.v2, k),
    ];
    let at = |i: usize, budget: usize| -> Result<KernelOutcome<PcfeInstance>> {
        let mut s = sides[i].clone();
        s.k = budget;
        kernelize_pcfe_at(&s, fresh[i])
    };
    let (one, two) = par::join(exec, || at(0, half_k), || at(1, half_k));
    let (one, two) = (one?, two?);
    let site_text = format!("x = {}, y = {}, sides of {} and {}", site.x, site.y, site.g1.len(), site.g2.len());
    let no = |why: &str| {
        (
            Reduced::No,
            RuleRecord::decision(Rule::Rule4, format!("{site_text}: {why}"), inst.k, Verdict::No),
        )
    };
    let (half_side, half_out) = match (&one.result, &two.result) {
        (Reduced::Kernel(_), _) => (Side::One, one),
        (_, Reduced::Kernel(_)) => (Side::Two, two),
        _ => return Ok(no("both sides fail at half budget")),
    };
    let full_idx = match half_side {
        Side::One => 1,
        Side::Two => 0,
    };
    let full_out = at(full_idx, k)?;
    let Reduced::Kernel(full) = &full_out.result else {
        return Ok(no("the other side fails at full budget"));
    };
    let Reduced::Kernel(half) = &half_out.result else {
        unreachable!("half side chosen for its kernel")
    };
    let r = assemble_rule4(g, site.x, site.y, half, full)?;
    let record = RuleRecord {
        rule4: Some(Box::new(Rule4Record {
            x: site.x,
            y: site.y,
            u1: site.u1,
            v1: site.v1,
            u2: site.u2,
            v2: site.v2,
            half_side,
            half_k,
            full_k: k,
            fresh,
            half: half_out.trace.clone(),
            full: full_out.trace.clone(),
        })),
        ..RuleRecord::contraction(Rule::Rule4, site_text, inst.k, inst.k, Vec::new())
    };
    Ok((Reduced::Kernel(CycleInstance::new(r, inst.k)), record))
}

/// Whether a single contraction turns `g` into a cycle.
fn one_contraction_to_cycle(g: &Graph) -> bool {
    let n = g.order();
    if n < 4 {
        return false;
    }
    g.edges().any(|(u, v)| {
        let common = g
            .neighbours(u)
            .iter()
            .filter(|w| g.has_edge(v, **w))
            .count();
        g.size() - 1 - common == n - 1 && g.contract_edge(u, v).is_ok_and(|h| h.is_cycle())
    })
}

fn decide_small(g: &Graph, k: i64) -> bool {
    match k {
        0 => g.is_cycle(),
        1 => g.is_cycle() || one_contraction_to_cycle(g),
        _ => unreachable!("only budgets 0 and 1 are decided directly"),
    }
}

pub fn kernelize_cycle(inst: &CycleInstance) -> Result<CycleKernelOutcome> {
    kernelize_cycle_with(inst, Execution::default())
}

/// Runs the full pipeline. Only the two Rule 4 side kernelizations depend
/// on `exec`; the outcome does not.
pub fn kernelize_cycle_with(inst: &CycleInstance, exec: Execution) -> Result<CycleKernelOutcome> {
    let mut trace = ReductionTrace::default();
    let decided = |trace: ReductionTrace, rule: Rule, site: String, k: i64, verdict: Verdict| {
        let mut trace = trace;
        trace.push(RuleRecord::decision(rule, site, k, verdict));
        let result = match verdict {
            Verdict::Yes => Reduced::Yes,
            Verdict::No => Reduced::No,
        };
        Ok(CycleKernelOutcome {
            result,
            trace,
            bound_used: BoundUsed::Direct,
        })
    };
    if !inst.g.is_connected() {
        return decided(trace, Rule::Disconnected, "input".into(), inst.k, Verdict::No);
    }
    if inst.g.order() < 3 || inst.g.is_tree() {
        return decided(trace, Rule::Tree, "input".into(), inst.k, Verdict::No);
    }
    let mut cur = inst.clone();
    loop {
        let k = cur.k;
        if k < 0 {
            return decided(trace, Rule::NegativeBudget, format!("k = {k}"), k, Verdict::No);
        }
        if k < 2 {
            let verdict = if decide_small(&cur.g, k) { Verdict::Yes } else { Verdict::No };
            return decided(trace, Rule::SmallBudget, format!("k = {k}"), k, verdict);
        }
        if rule1(&cur).is_some() {
            let site = format!("3-connected on {} > 2k+4 = {} vertices", cur.g.order(), 2 * k + 4);
            return decided(trace, Rule::Rule1, site, k, Verdict::No);
        }
        let mut fired = None;
        for (rule, apply) in [(Rule::Rule2, rule2 as fn(&CycleInstance) -> _), (Rule::Rule3, rule3)] {
            if let Some(effect) = apply(&cur)? {
                fired = Some((rule, effect));
                break;
            }
        }
        let Some((rule, effect)) = fired else { break };
        match effect {
            RuleEffect::No => {
                return decided(trace, rule, "block outside budget".into(), k, Verdict::No);
            }
            RuleEffect::Reduced { inst: next, contractions } => {
                let site = format!("{} contractions", contractions.len());
                trace.push(RuleRecord::contraction(rule, site, k, next.k, contractions));
                cur = next;
            }
        }
    }
    let k = cur.k;
    let n = cur.g.order() as i64;
    let kernel = |cur: CycleInstance, trace: ReductionTrace, bound_used| {
        Ok(CycleKernelOutcome {
            result: Reduced::Kernel(cur),
            trace,
            bound_used,
        })
    };
    if !is_k_connected(&cur.g, 2) {
        return kernel(cur, trace, BoundUsed::TwoKPlus2);
    }
    // Rule 1 did not fire, so a larger graph is not 3-connected.
    if n <= 2 * k + 4 && is_k_connected(&cur.g, 3) {
        return kernel(cur, trace, BoundUsed::TwoKPlus4);
    }
    if let Some(site) = find_rule4_site(&cur)? {
        let (result, record) = apply_rule4(&cur, &site, exec)?;
        trace.push(record);
        return Ok(CycleKernelOutcome {
            result,
            trace,
            bound_used: BoundUsed::Rule4,
        });
    }
    if n >= 5 * k + 4 {
        let site = format!("2-connected on {n} >= 5k+4 = {} vertices", 5 * k + 4);
        return decided(trace, Rule::Claim, site, k, Verdict::No);
    }
    kernel(cur, trace, BoundUsed::FiveKPlus4)
}
