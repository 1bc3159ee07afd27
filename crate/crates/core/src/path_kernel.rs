//! Path Contraction kernel: Rule A rejects large 2-edge-connected graphs,
//! Rule B contracts bridges towards oversized pendant parts. Neither rule
//! changes the budget. Exhaustively reduced YES instances have at most
//! `3k + 4` vertices, so a larger fixpoint is answered NO.

use crate::error::{Error, Result};
use crate::graph::{is_two_edge_connected, BridgeTree, Graph, Vertex};
use crate::instance::{PathInstance, Reduced};
use crate::trace::{ReductionTrace, Rule, RuleRecord, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelOutcome<I> {
    pub result: Reduced<I>,
    pub trace: ReductionTrace,
}

/// A place where Rule B applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleBSite {
    /// A 2-edge-connected component; all edges leaving it are bridges.
    pub c: Vec<Vertex>,
    /// Components of `G - C`, largest first, ties by smallest vertex.
    pub components: Vec<Vec<Vertex>>,
    /// The bridge between `C` and the largest component, as
    /// `(endpoint in C, endpoint in B_1)`.
    pub bridge: (Vertex, Vertex),
}

pub fn path_bound(k: usize) -> usize {
    3 * k + 4
}

/// Rule A: a 2-edge-connected graph on more than `3k + 1` vertices needs more
/// than `k` contractions. Returns `Some(No)` when it fires.
pub fn rule_a(inst: &PathInstance) -> Option<Verdict> {
    (inst.g.order() > 3 * inst.k + 1 && is_two_edge_connected(&inst.g)).then_some(Verdict::No)
}

/// Whether Rule B's size conditions hold, given `|V|`, `|C|` and the
/// component sizes in descending order. `(|C| - 1) / 3` is compared exactly
/// by scaling everything by 3.
fn rule_b_holds(n: usize, c_size: usize, sizes: &[usize], k: usize) -> bool {
    let Some(&b1) = sizes.first() else {
        return false;
    };
    if n - b1 < k + 2 {
        return false;
    }
    let mut lhs = 3 * b1 + (c_size - 1);
    if sizes.len() >= 4 {
        lhs += 3 * sizes[3..].iter().sum::<usize>();
    }
    lhs >= 3 * (k + 2)
}

struct Candidate {
    node: usize,
    inner: Vertex,
    outer: Vertex,
}

/// Qualifying sites in canonical order: candidates `C` by smallest vertex,
/// at most one site per candidate.
fn candidates(g: &Graph, k: usize, tree: &BridgeTree) -> Vec<Candidate> {
    let n = g.order();
    let mut out = Vec::new();
    for (node, c) in tree.nodes.iter().enumerate() {
        let mut branches = tree.branches(node);
        if branches.is_empty() {
            continue;
        }
        branches.sort_by(|a, b| b.size.cmp(&a.size).then(a.min_vertex.cmp(&b.min_vertex)));
        let sizes: Vec<usize> = branches.iter().map(|b| b.size).collect();
        if rule_b_holds(n, c.len(), &sizes, k) {
            out.push(Candidate {
                node,
                inner: branches[0].inner,
                outer: branches[0].outer,
            });
        }
    }
    out
}

fn materialize(g: &Graph, tree: &BridgeTree, cand: &Candidate) -> RuleBSite {
    let c = tree.nodes[cand.node].clone();
    let mut components = g.without(&c).components();
    components.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    RuleBSite {
        c,
        components,
        bridge: (cand.inner, cand.outer),
    }
}

/// First Rule B site in canonical order, if any.
pub fn find_rule_b_site(inst: &PathInstance) -> Result<Option<RuleBSite>> {
    Ok(find_site_avoiding(inst, &[])?.0)
}

/// First site whose contraction keeps every protected vertex; the flag
/// reports whether a qualifying site was passed over.
fn find_site_avoiding(inst: &PathInstance, protected: &[Vertex]) -> Result<(Option<RuleBSite>, bool)> {
    let tree = BridgeTree::of(&inst.g)?;
    let mut skipped = false;
    for cand in candidates(&inst.g, inst.k, &tree) {
        if protected.contains(&cand.outer) {
            skipped = true;
            continue;
        }
        return Ok((Some(materialize(&inst.g, &tree, &cand)), skipped));
    }
    Ok((None, skipped))
}

/// Contracts the site's bridge; the endpoint in `C` survives. The budget is
/// unchanged.
pub fn apply_rule_b(inst: &PathInstance, site: &RuleBSite) -> Result<PathInstance> {
    let (inner, outer) = site.bridge;
    if !inst.g.has_edge(inner, outer) {
        return Err(Error::StaleSite(format!("bridge {inner}{outer} is gone")));
    }
    Ok(PathInstance::new(inst.g.contract_edge(outer, inner)?, inst.k))
}

/// Applies Rule A and Rule B until neither fires. Rule B sites that would
/// eliminate a vertex of `protected` are skipped. A fixpoint above `3k + 4`
/// vertices is answered NO.
pub fn kernelize_path(inst: &PathInstance, protected: &[Vertex]) -> Result<KernelOutcome<PathInstance>> {
    if !inst.g.is_connected() {
        return Err(Error::Disconnected);
    }
    let k = inst.k;
    let kk = k as i64;
    let mut g = inst.g.clone();
    let mut trace = ReductionTrace::default();
    let mut skipped;
    loop {
        let cur = PathInstance::new(g, k);
        if rule_a(&cur).is_some() {
            trace.push(RuleRecord::decision(
                Rule::RuleA,
                format!("2-edge-connected on {} > 3k+1 = {} vertices", cur.g.order(), 3 * k + 1),
                kk,
                Verdict::No,
            ));
            return Ok(KernelOutcome {
                result: Reduced::No,
                trace,
            });
        }
        let (site, passed) = find_site_avoiding(&cur, protected)?;
        skipped = passed;
        g = cur.g;
        let Some(site) = site else { break };
        let (inner, outer) = site.bridge;
        g.contract_in_place(outer, inner)?;
        trace.push(RuleRecord::contraction(
            Rule::RuleB,
            format!("C = {} vertices at {inner}, |B1| = {}", site.c.len(), site.components[0].len()),
            kk,
            kk,
            vec![(outer, inner)],
        ));
    }
    if g.order() > path_bound(k) {
        let rule = if skipped { Rule::ProtectedBlock } else { Rule::PathBound };
        trace.push(RuleRecord::decision(
            rule,
            format!("reduced graph has {} > 3k+4 = {} vertices", g.order(), path_bound(k)),
            kk,
            Verdict::No,
        ));
        return Ok(KernelOutcome {
            result: Reduced::No,
            trace,
        });
    }
    Ok(KernelOutcome {
        result: Reduced::Kernel(PathInstance::new(g, k)),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Vertex {
        Vertex(i)
    }

    #[test]
    fn rule_a_cases() {
        assert_eq!(rule_a(&PathInstance::new(Graph::cycle(5), 1)), Some(Verdict::No));
        assert_eq!(rule_a(&PathInstance::new(Graph::cycle(5), 2)), None);
        assert_eq!(rule_a(&PathInstance::new(Graph::path(10), 0)), None);
    }

    #[test]
    fn rule_b_on_a_path() {
        // P10, k = 2. Candidates in id order: v0 has B1 of 9 vertices and
        // |V - B1| = 1 < 4; v1..v2 also fail the first test; v3 has
        // B1 = {v4..v9} (6), |V - B1| = 4, 6 >= 4.
        let inst = PathInstance::new(Graph::path(10), 2);
        let site = find_rule_b_site(&inst).unwrap().unwrap();
        assert_eq!(site.c, vec![v(3)]);
        assert_eq!(site.bridge, (v(3), v(4)));
        assert_eq!(site.components[0].len(), 6);
        let next = apply_rule_b(&inst, &site).unwrap();
        assert_eq!(next.k, 2);
        assert!(next.g.is_path());
        assert_eq!(next.g.order(), 9);
    }

    #[test]
    fn rule_b_site_at_the_middle_of_p10() {
        // The v5 candidate named in the worked example also qualifies.
        let g = Graph::path(10);
        let tree = BridgeTree::of(&g).unwrap();
        let sites = candidates(&g, 2, &tree);
        assert!(sites.iter().any(|c| tree.nodes[c.node] == vec![v(5)]));
        let at5 = sites.iter().find(|c| tree.nodes[c.node] == vec![v(5)]).unwrap();
        assert_eq!((at5.inner, at5.outer), (v(5), v(4)));
    }

    #[test]
    fn no_rule_b_site_on_a_cycle_or_small_star() {
        assert!(find_rule_b_site(&PathInstance::new(Graph::cycle(5), 2)).unwrap().is_none());
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(find_rule_b_site(&PathInstance::new(star, 0)).unwrap().is_none());
    }

    #[test]
    fn stale_sites_are_rejected() {
        let inst = PathInstance::new(Graph::path(10), 2);
        let site = find_rule_b_site(&inst).unwrap().unwrap();
        let moved = apply_rule_b(&inst, &site).unwrap();
        assert!(matches!(apply_rule_b(&moved, &site), Err(Error::StaleSite(_))));
    }

    #[test]
    fn kernelize_examples() {
        let out = kernelize_path(&PathInstance::new(Graph::path(10), 2), &[]).unwrap();
        let kernel = out.result.kernel().unwrap();
        assert!(kernel.g.order() <= 10);
        assert!(kernel.g.is_path());
        for (g, k) in [(Graph::cycle(5), 1), (Graph::cycle(9), 2)] {
            let out = kernelize_path(&PathInstance::new(g, k), &[]).unwrap();
            assert!(out.result.is_no());
            assert_eq!(out.trace.records.last().unwrap().rule, Rule::RuleA);
        }
    }

    #[test]
    fn budget_never_changes() {
        let out = kernelize_path(&PathInstance::new(Graph::path(30), 3), &[]).unwrap();
        assert!(out.trace.records.iter().all(|r| r.k_before == 3 && r.k_after == 3));
        assert!(out.result.kernel().unwrap().g.order() <= path_bound(3));
    }

    #[test]
    fn disconnected_input_is_an_error() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            kernelize_path(&PathInstance::new(g, 1), &[]).unwrap_err(),
            Error::Disconnected
        );
    }
}
