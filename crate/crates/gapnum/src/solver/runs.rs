//! Longest monomino-free column runs.
//!
//! A monomino taken after `c` columns were absorbed lands in column `c+1`,
//! so the run between consecutive monominoes at columns `c1+1` and `c2+1`
//! spans `c2 - c1 - 1` columns, and the stretch between them is a path of
//! T-edges. With `P(v)` the most columns any T-only path from `v` absorbs,
//! the maximum run is therefore
//!
//! - `P(node 0)` for a run starting at the left edge of the rectangle, and
//! - `cols(A) - 1 + P(head(A))` for a run opened by monomino edge `A`
//!   (the monomino occupies the first column the window would otherwise
//!   extend into; runs closed by the right edge are the sub-case where the
//!   path ends at node 0).
//!
//! Every combination embeds in a real tiling: any fringe is reachable from
//! the empty fringe and can reach it again with monominoes placed outside
//! the measured window. When the T-subgraph has a cycle the run length is
//! unbounded; any T-cycle absorbs at least one column.

use serde::{Deserialize, Serialize};

use crate::digraph::FringeEdge;
use crate::geometry::TileKind;
use crate::graphops;
use crate::solver::Solver;

/// Maximum number of consecutive monomino-free columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RunLength {
    Finite(u64),
    Unbounded,
}

/// Outcome of [`Solver::max_gapless_run`].
///
/// For a finite maximum `R` the witness is either a pure T-edge path
/// absorbing exactly `R` columns (a run against the left edge), or one
/// monomino edge followed by a T-edge path, absorbing `R + 1` columns of
/// which the first holds the single monomino. For the unbounded case the
/// witness is a T-only cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunResult {
    pub width: usize,
    pub max_gapless_columns: RunLength,
    pub witness_path: Vec<FringeEdge>,
}

pub(crate) fn max_gapless_run(solver: &Solver) -> RunResult {
    let g = solver.digraph();
    let width = g.width();
    let Some(topo) = solver.t_topo() else {
        let cycle = graphops::find_t_cycle(g).expect("cyclic T-subgraph has a cycle");
        let witness_path: Vec<FringeEdge> = cycle.iter().map(|&e| g.fringe_edge(e)).collect();
        debug_assert!(witness_path.iter().all(|e| e.kind == TileKind::T));
        return RunResult {
            width,
            max_gapless_columns: RunLength::Unbounded,
            witness_path,
        };
    };

    // Longest T-path by absorbed columns from every node; best edge per
    // node recorded for the witness, first-best in edge order.
    let n = g.node_count();
    const NO_EDGE: u32 = u32::MAX;
    let mut best = vec![0u64; n];
    let mut via = vec![NO_EDGE; n];
    for &u in topo.iter().rev() {
        let base = g.first_edge_id(u);
        for (i, e) in g.out_edges(u).iter().enumerate() {
            if e.kind() != TileKind::T {
                continue;
            }
            let cand = e.cols as u64 + best[e.to as usize];
            if cand > best[u as usize] {
                best[u as usize] = cand;
                via[u as usize] = base + i as u32;
            }
        }
    }

    // Best run and the monomino edge opening it (none for a left-edge run).
    let mut max_run = best[0] as i64;
    let mut opener: Option<u32> = None;
    for u in 0..n as u32 {
        let base = g.first_edge_id(u);
        for (i, e) in g.out_edges(u).iter().enumerate() {
            if e.kind() != TileKind::M {
                continue;
            }
            let run = e.cols as i64 - 1 + best[e.to as usize] as i64;
            if run > max_run {
                max_run = run;
                opener = Some(base + i as u32);
            }
        }
    }
    let max_run = max_run.max(0) as u64;

    let mut witness_path = Vec::new();
    let mut at = match opener {
        Some(eid) => {
            let e = g.fringe_edge(eid);
            witness_path.push(e);
            e.to
        }
        None => 0,
    };
    while best[at as usize] > 0 {
        let eid = via[at as usize];
        debug_assert_ne!(eid, NO_EDGE);
        let e = g.fringe_edge(eid);
        witness_path.push(e);
        at = e.to;
    }
    let absorbed: u64 = witness_path.iter().map(|e| e.cols as u64).sum();
    debug_assert_eq!(
        absorbed,
        max_run + u64::from(opener.is_some()),
        "witness covers the run plus the opening monomino column"
    );
    RunResult {
        width,
        max_gapless_columns: RunLength::Finite(max_run),
        witness_path,
    }
}
