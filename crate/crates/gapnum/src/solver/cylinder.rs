//! Periodic (cylinder) tilings: closed walks absorbing exactly `p` columns
//! with a bounded number of monomino edges.
//!
//! The search runs one exact reachability DP per candidate start node over
//! states (node, columns absorbed, monominoes used). Three facts keep it
//! tractable:
//!
//! - Cell conservation forces any closed walk absorbing `p` columns to use
//!   exactly `4*tau + mu = w*p` cells, so only `mu ≡ w*p (mod 4)` can close;
//!   infeasible budgets are rejected arithmetically.
//! - A walk with no monomino edges stays inside one strongly connected
//!   component of the T-subgraph, so the monomino-free search only sweeps
//!   nodes of cyclic components.
//! - Every closed walk can be rotated to begin at its first node in the
//!   sweep order, so the DP from start `s` may ignore all nodes that come
//!   before `s`; sweeping in order stays exhaustive and later starts search
//!   shrinking subgraphs.
//!
//! A returned `None` therefore means a completed, exhaustive search. Budget
//! exhaustion is a distinct error, accounted in sweep order so the outcome
//! is deterministic in both execution modes.

use serde::{Deserialize, Serialize};

use crate::digraph::{FringeDigraph, FringeEdge};
use crate::error::{Error, Result};
use crate::geometry::TileKind;
use crate::par::ExecMode;
use crate::solver::Solver;

/// A closed walk witnessing a `width x period` cylinder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderWitness {
    pub width: usize,
    pub period: u32,
    pub monominoes: u32,
    pub start_node: u32,
    pub cycle: Vec<FringeEdge>,
}

impl CylinderWitness {
    /// Checks closure, exact column count and monomino count.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.cycle.is_empty() {
            return Err("empty cycle".into());
        }
        let mut at = self.start_node;
        let mut cols = 0u32;
        let mut monominoes = 0u32;
        for e in &self.cycle {
            if e.from != at {
                return Err(format!("edge from {} does not continue walk at {at}", e.from));
            }
            at = e.to;
            cols += e.cols;
            if e.kind == TileKind::M {
                monominoes += 1;
            }
        }
        if at != self.start_node {
            return Err(format!("walk ends at {at}, not at start {}", self.start_node));
        }
        if cols != self.period {
            return Err(format!("walk absorbs {cols} columns, period is {}", self.period));
        }
        if monominoes != self.monominoes {
            return Err(format!(
                "walk has {monominoes} monomino edges, witness claims {}",
                self.monominoes
            ));
        }
        Ok(())
    }
}

const NO_LOCAL: u32 = u32::MAX;
const NO_PRED: u32 = u32::MAX;
#[cfg(feature = "parallel")]
const SWEEP_CHUNK: usize = 32;
/// Parallelize the start sweep only when each per-start DP owns enough
/// state (in 64-bit words) that a chunk outweighs its dispatch cost.
const PAR_SWEEP_MIN_WORDS: usize = 1 << 18;

/// Node set a DP runs over: participating nodes in zero-column topological
/// order plus the inverse map.
struct IndexSpace {
    topo_nodes: Vec<u32>,
    local_of: Vec<u32>,
}

impl IndexSpace {
    fn new(topo_nodes: Vec<u32>, node_count: usize) -> IndexSpace {
        let mut local_of = vec![NO_LOCAL; node_count];
        for (i, &v) in topo_nodes.iter().enumerate() {
            local_of[v as usize] = i as u32;
        }
        IndexSpace {
            topo_nodes,
            local_of,
        }
    }

    fn len(&self) -> usize {
        self.topo_nodes.len()
    }
}

/// Per-start DP parameters shared across the sweep.
struct SearchSpec<'a> {
    g: &'a FringeDigraph,
    space: &'a IndexSpace,
    /// Sweep rank per global node id; the DP from a start ignores nodes of
    /// lower rank (the rotation argument above).
    sweep_rank: &'a [u32],
    period: usize,
    mu_bound: usize,
    /// Monomino counts that can close a walk (`≡ w*p mod 4`).
    feasible_mu: Vec<usize>,
}

struct DpBuffers {
    bits: Vec<u64>,
}

impl DpBuffers {
    fn new(spec: &SearchSpec) -> DpBuffers {
        let stride = spec.space.len().div_ceil(64);
        let layers = (spec.period + 1) * (spec.mu_bound + 1);
        DpBuffers {
            bits: vec![0u64; layers * stride],
        }
    }
}

/// Reachability DP from one start. Returns the smallest feasible monomino
/// count for which (start, period) closes, plus the relaxation count.
fn reach_from(spec: &SearchSpec, start: u32, buf: &mut DpBuffers) -> (Option<u32>, u64) {
    let stride = spec.space.len().div_ceil(64);
    let mu_span = spec.mu_bound + 1;
    let layer = |c: usize, m: usize| (c * mu_span + m) * stride;
    buf.bits.fill(0);

    let my_rank = spec.sweep_rank[start as usize];
    let start_local = spec.space.local_of[start as usize];
    debug_assert_ne!(start_local, NO_LOCAL);
    buf.bits[layer(0, 0) + (start_local / 64) as usize] |= 1u64 << (start_local % 64);

    let mut relaxed = 0u64;
    // The layer c == p is relaxed too: a walk may absorb its last column and
    // still need zero-column placements to return to the start node (the
    // rotation cut can fall inside such a stretch). Column-absorbing edges
    // there are pruned by the c2 > period check.
    for c in 0..=spec.period {
        for m in 0..mu_span {
            let base = layer(c, m);
            let mut word_idx = 0usize;
            while word_idx < stride {
                let mut pending = buf.bits[base + word_idx];
                let mut processed = 0u64;
                while pending != 0 {
                    let bit = pending.trailing_zeros();
                    processed |= 1u64 << bit;
                    let local = word_idx * 64 + bit as usize;
                    let v = spec.space.topo_nodes[local];
                    for e in spec.g.out_edges(v) {
                        relaxed += 1;
                        let m2 = m + usize::from(e.kind() == TileKind::M);
                        let c2 = c + e.cols as usize;
                        if m2 > spec.mu_bound || c2 > spec.period {
                            continue;
                        }
                        if spec.sweep_rank[e.to as usize] < my_rank {
                            continue;
                        }
                        let to_local = spec.space.local_of[e.to as usize];
                        if to_local == NO_LOCAL {
                            continue;
                        }
                        buf.bits[layer(c2, m2) + (to_local / 64) as usize] |=
                            1u64 << (to_local % 64);
                    }
                    // Zero-column T-edges may set bits ahead in this same
                    // word, so re-read it rather than iterate a stale copy.
                    pending = buf.bits[base + word_idx] & !processed;
                }
                word_idx += 1;
            }
        }
    }

    for &m in &spec.feasible_mu {
        let slot = layer(spec.period, m) + (start_local / 64) as usize;
        if buf.bits[slot] & (1u64 << (start_local % 64)) != 0 {
            return (Some(m as u32), relaxed);
        }
    }
    (None, relaxed)
}

/// Re-runs the DP from the found start recording the first-setter edge per
/// state, then walks predecessors back from the closing state.
fn reconstruct(
    spec: &SearchSpec,
    start: u32,
    found_mu: u32,
    limits: &crate::limits::Limits,
) -> Result<Vec<u32>> {
    let stride = spec.space.len().div_ceil(64);
    let mu_span = spec.mu_bound + 1;
    let states = (spec.period + 1) * mu_span * spec.space.len();
    limits.check_mem("cylinder witness reconstruction", states as u64 * 4)?;
    let layer = |c: usize, m: usize| (c * mu_span + m) * stride;
    let state_of = |c: usize, m: usize, local: usize| (c * mu_span + m) * spec.space.len() + local;

    let mut buf = DpBuffers::new(spec);
    let mut pred = vec![NO_PRED; states];
    let my_rank = spec.sweep_rank[start as usize];
    let start_local = spec.space.local_of[start as usize] as usize;
    buf.bits[layer(0, 0) + start_local / 64] |= 1u64 << (start_local % 64);

    for c in 0..=spec.period {
        for m in 0..mu_span {
            let base = layer(c, m);
            let mut word_idx = 0usize;
            while word_idx < stride {
                let mut pending = buf.bits[base + word_idx];
                let mut processed = 0u64;
                while pending != 0 {
                    let bit = pending.trailing_zeros();
                    processed |= 1u64 << bit;
                    let local = word_idx * 64 + bit as usize;
                    let v = spec.space.topo_nodes[local];
                    let first_eid = spec.g.first_edge_id(v);
                    for (i, e) in spec.g.out_edges(v).iter().enumerate() {
                        let m2 = m + usize::from(e.kind() == TileKind::M);
                        let c2 = c + e.cols as usize;
                        if m2 > spec.mu_bound || c2 > spec.period {
                            continue;
                        }
                        if spec.sweep_rank[e.to as usize] < my_rank {
                            continue;
                        }
                        let to_local = spec.space.local_of[e.to as usize];
                        if to_local == NO_LOCAL {
                            continue;
                        }
                        let word = layer(c2, m2) + (to_local / 64) as usize;
                        let mask = 1u64 << (to_local % 64);
                        if buf.bits[word] & mask == 0 {
                            buf.bits[word] |= mask;
                            pred[state_of(c2, m2, to_local as usize)] = first_eid + i as u32;
                        }
                    }
                    pending = buf.bits[base + word_idx] & !processed;
                }
                word_idx += 1;
            }
        }
    }

    let mut edges_rev = Vec::new();
    let (mut c, mut m, mut local) = (spec.period, found_mu as usize, start_local);
    while !(c == 0 && m == 0 && local == start_local) {
        let eid = pred[state_of(c, m, local)];
        assert_ne!(eid, NO_PRED, "reconstruction follows reached states");
        let e = spec.g.edge(eid);
        edges_rev.push(eid);
        let from = spec.g.edge_source(eid);
        c -= e.cols as usize;
        m -= usize::from(e.kind() == TileKind::M);
        local = spec.space.local_of[from as usize] as usize;
    }
    edges_rev.reverse();
    Ok(edges_rev)
}

pub(crate) fn search(
    solver: &Solver,
    period: usize,
    mu_max: usize,
) -> Result<Option<CylinderWitness>> {
    let g = solver.digraph();
    let w = g.width();
    if period == 0 {
        return Err(Error::InvalidArgument("cylinder period must be >= 1".into()));
    }
    let cells = w * period;
    // Only mu ≡ w*p (mod 4) with mu <= w*p can close a p-column walk.
    let mu_bound = mu_max.min(cells);
    let residue = cells % 4;
    if mu_bound < residue {
        return Ok(None);
    }
    let mu_eff = residue + (mu_bound - residue) / 4 * 4;
    let feasible_mu: Vec<usize> = (0..=mu_eff).filter(|m| m % 4 == residue).collect();
    debug_assert!(!feasible_mu.is_empty());

    if mu_eff == 0 {
        t_only_search(solver, period)
    } else {
        general_search(solver, period, mu_eff, feasible_mu)
    }
}

/// Monomino-free cylinders: sweep each cyclic T-component separately.
fn t_only_search(solver: &Solver, period: usize) -> Result<Option<CylinderWitness>> {
    let g = solver.digraph();
    let n = g.node_count();
    let sccs = solver.t_sccs();
    if sccs.cyclic_comps.is_empty() {
        return Ok(None);
    }
    let topo_all = solver.fwd_levels();
    let mut budget_left = solver.limits().relax_budget;

    for &comp in &sccs.cyclic_comps {
        // Component nodes in zero-column topological order; the sweep order
        // is ascending node id.
        let mut topo_nodes = Vec::new();
        for l in 0..topo_all.level_count() {
            for &v in topo_all.level(l) {
                if sccs.comp_of[v as usize] == comp {
                    topo_nodes.push(v);
                }
            }
        }
        let space = IndexSpace::new(topo_nodes, n);
        let mut starts: Vec<u32> = space.topo_nodes.clone();
        starts.sort_unstable();
        let mut sweep_rank = vec![u32::MAX; n];
        for (i, &v) in starts.iter().enumerate() {
            sweep_rank[v as usize] = i as u32;
        }
        let spec = SearchSpec {
            g,
            space: &space,
            sweep_rank: &sweep_rank,
            period,
            mu_bound: 0,
            feasible_mu: vec![0],
        };
        if let Some(found) = sweep(solver, &spec, &starts, &mut budget_left)? {
            return finish(solver, &spec, found);
        }
    }
    Ok(None)
}

/// Cylinders that may use monominoes: sweep every node, most promising
/// starts first (nodes on the longest T-stretches).
fn general_search(
    solver: &Solver,
    period: usize,
    mu_eff: usize,
    feasible_mu: Vec<usize>,
) -> Result<Option<CylinderWitness>> {
    let g = solver.digraph();
    let n = g.node_count();
    let topo_all = solver.fwd_levels();
    let mut topo_nodes = Vec::with_capacity(n);
    for l in 0..topo_all.level_count() {
        topo_nodes.extend_from_slice(topo_all.level(l));
    }
    let space = IndexSpace::new(topo_nodes, n);

    let mut starts: Vec<u32> = (0..n as u32).collect();
    match solver.t_topo() {
        Some(topo) => {
            // Longest T-path through each node, as columns: nodes on long
            // monomino-free stretches are the likely cylinder members.
            let mut into = vec![0u64; n];
            let mut out_of = vec![0u64; n];
            for &u in topo.iter().rev() {
                for e in g.out_edges(u) {
                    if e.kind() == TileKind::T {
                        let cand = e.cols as u64 + out_of[e.to as usize];
                        if cand > out_of[u as usize] {
                            out_of[u as usize] = cand;
                        }
                    }
                }
            }
            for &u in topo.iter() {
                for e in g.out_edges(u) {
                    if e.kind() == TileKind::T {
                        let cand = into[u as usize] + e.cols as u64;
                        if cand > into[e.to as usize] {
                            into[e.to as usize] = cand;
                        }
                    }
                }
            }
            starts.sort_by_key(|&u| {
                (
                    std::cmp::Reverse(into[u as usize] + out_of[u as usize]),
                    u,
                )
            });
        }
        None => {
            // T-subgraph is cyclic: nodes inside cyclic components first.
            let sccs = solver.t_sccs();
            let mut cyclic = vec![false; sccs.comp_count];
            for &c in &sccs.cyclic_comps {
                cyclic[c as usize] = true;
            }
            starts.sort_by_key(|&u| (!cyclic[sccs.comp_of[u as usize] as usize], u));
        }
    }
    let mut sweep_rank = vec![u32::MAX; n];
    for (i, &v) in starts.iter().enumerate() {
        sweep_rank[v as usize] = i as u32;
    }

    let spec = SearchSpec {
        g,
        space: &space,
        sweep_rank: &sweep_rank,
        period,
        mu_bound: mu_eff,
        feasible_mu,
    };
    let mut budget_left = solver.limits().relax_budget;
    match sweep(solver, &spec, &starts, &mut budget_left)? {
        Some(found) => finish(solver, &spec, found),
        None => Ok(None),
    }
}

/// Runs the per-start DPs over `starts` in order, chunked in parallel mode.
/// Budget is accounted in sweep order so both modes agree on the outcome.
fn sweep(
    solver: &Solver,
    spec: &SearchSpec,
    starts: &[u32],
    budget_left: &mut u64,
) -> Result<Option<(u32, u32)>> {
    let stride = spec.space.len().div_ceil(64);
    let layers = (spec.period + 1) * (spec.mu_bound + 1);
    let threads = match solver.exec() {
        ExecMode::Sequential => 1,
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => rayon::current_num_threads().max(1),
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel => 1,
    };
    solver.limits().check_mem(
        "cylinder search buffers",
        (layers * stride * 8 * threads) as u64,
    )?;

    let parallel_worthwhile = layers * stride >= PAR_SWEEP_MIN_WORDS;
    #[cfg(not(feature = "parallel"))]
    let _ = parallel_worthwhile;
    match solver.exec() {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel if parallel_worthwhile => {
            use rayon::prelude::*;
            for chunk in starts.chunks(SWEEP_CHUNK) {
                let results: Vec<(Option<u32>, u64)> = chunk
                    .par_iter()
                    .map_init(
                        || DpBuffers::new(spec),
                        |buf, &s| reach_from(spec, s, buf),
                    )
                    .collect();
                for (&s, (found, relaxed)) in chunk.iter().zip(&results) {
                    if *budget_left < *relaxed {
                        return Err(Error::BudgetExhausted {
                            what: format!(
                                "cylinder sweep width {} period {}",
                                spec.g.width(),
                                spec.period
                            ),
                            budget: solver.limits().relax_budget,
                        });
                    }
                    *budget_left -= relaxed;
                    if let Some(m) = found {
                        return Ok(Some((s, *m)));
                    }
                }
            }
            Ok(None)
        }
        _ => {
            let mut buf = DpBuffers::new(spec);
            for &s in starts {
                let (found, relaxed) = reach_from(spec, s, &mut buf);
                if *budget_left < relaxed {
                    return Err(Error::BudgetExhausted {
                        what: format!(
                            "cylinder sweep width {} period {}",
                            spec.g.width(),
                            spec.period
                        ),
                        budget: solver.limits().relax_budget,
                    });
                }
                *budget_left -= relaxed;
                if let Some(m) = found {
                    return Ok(Some((s, m)));
                }
            }
            Ok(None)
        }
    }
}

fn finish(
    solver: &Solver,
    spec: &SearchSpec,
    (start, mu): (u32, u32),
) -> Result<Option<CylinderWitness>> {
    let edges = reconstruct(spec, start, mu, solver.limits())?;
    let cycle: Vec<FringeEdge> = edges.iter().map(|&e| spec.g.fringe_edge(e)).collect();
    let witness = CylinderWitness {
        width: spec.g.width(),
        period: spec.period as u32,
        monominoes: mu,
        start_node: start,
        cycle,
    };
    debug_assert_eq!(witness.validate(), Ok(()));
    Ok(Some(witness))
}
