//! Path Contraction with Fixed Endvertices, reduced to Path Contraction.
//!
//! Hanging a path of `k + 1` fresh vertices off each anchor forces any path
//! reachable within budget to run from one pendant tip to the other. The
//! resulting graph `H` is kernelized with the path rules while the two tips
//! are kept alive.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::{PathInstance, PcfeInstance};
use crate::path_kernel::{kernelize_path, KernelOutcome};

/// Builds `H` with fresh ids starting at `g.id_bound()`. Returns `H` and the
/// tips `(u', v')`.
pub fn build_h(inst: &PcfeInstance) -> Result<(Graph, Vertex, Vertex)> {
    build_h_at(inst, inst.g.id_bound() as u32)
}

/// As [`build_h`] with an explicit first fresh id. Fresh ids are laid out as
/// the `k` inner vertices of the path at `u`, the `k` inner vertices of the
/// path at `v`, then `u'` and `v'`.
pub fn build_h_at(inst: &PcfeInstance, fresh_base: u32) -> Result<(Graph, Vertex, Vertex)> {
    let PcfeInstance { g, u, v, k } = inst;
    let (u, v, k) = (*u, *v, *k as u32);
    for w in [u, v] {
        if !g.contains(w) {
            return Err(Error::UnknownVertex(w));
        }
    }
    if u == v {
        return Err(Error::SameAnchors(u));
    }
    if (fresh_base as usize) < g.id_bound() {
        return Err(Error::InvalidParams(format!(
            "fresh ids from {fresh_base} collide with ids below {}",
            g.id_bound()
        )));
    }
    let mut h = g.clone();
    let tips = [Vertex(fresh_base + 2 * k), Vertex(fresh_base + 2 * k + 1)];
    for (side, (anchor, tip)) in [(u, tips[0]), (v, tips[1])].into_iter().enumerate() {
        let mut prev = anchor;
        let first = fresh_base + side as u32 * k;
        for id in (first..first + k).map(Vertex).chain([tip]) {
            h.insert_vertex(id, vec![id])?;
            h.add_edge(prev, id)?;
            prev = id;
        }
    }
    Ok((h, tips[0], tips[1]))
}

/// Kernelizes through `H`. The kernel is a fixed-endvertex instance whose
/// anchors are the tips `u'` and `v'`.
pub fn kernelize_pcfe(inst: &PcfeInstance) -> Result<KernelOutcome<PcfeInstance>> {
    let (h, ut, vt) = build_h(inst)?;
    kernelize_h(h, ut, vt, inst.k)
}

/// As [`kernelize_pcfe`] with an explicit first fresh id.
pub fn kernelize_pcfe_at(inst: &PcfeInstance, fresh_base: u32) -> Result<KernelOutcome<PcfeInstance>> {
    let (h, ut, vt) = build_h_at(inst, fresh_base)?;
    kernelize_h(h, ut, vt, inst.k)
}

fn kernelize_h(h: Graph, ut: Vertex, vt: Vertex, k: usize) -> Result<KernelOutcome<PcfeInstance>> {
    let out = kernelize_path(&PathInstance::new(h, k), &[ut, vt])?;
    Ok(KernelOutcome {
        result: out.result.map(|p| PcfeInstance::new(p.g, ut, vt, k)),
        trace: out.trace,
    })
}
