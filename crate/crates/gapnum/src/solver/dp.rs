//! Layered shortest-path DP over (digraph node, columns absorbed).
//!
//! A tiling of a `w x n` rectangle is a walk from the empty fringe back to
//! the empty fringe absorbing exactly n columns; its monomino count is the
//! number of M-edges, so gap numbers are 0/1-cost shortest paths in the
//! column-layered graph. Edges absorbing no column stay inside a layer and
//! form a DAG (cells strictly accumulate), so each layer relaxes exactly
//! once along precomputed topological levels; nodes within a level are
//! independent, which is what the parallel mode exploits.
//!
//! The witness is recovered from cost-to-go values by walking forward from
//! the start and always taking the smallest edge id that stays optimal, so
//! among all minimum-cost tilings the one returned has the lexicographically
//! smallest edge-id sequence.

use crate::error::{Error, Result};
use crate::geometry::TileKind;
use crate::par;
use crate::solver::tiling::Tiling;
use crate::solver::Solver;

const INF: u32 = u32::MAX;
// Levels shorter than two chunks relax inline; dispatch costs more than the
// pull loop itself until the per-level node count is in the tens of
// thousands.
const CHUNK: usize = 65536;

fn edge_cost(kind: TileKind) -> u32 {
    match kind {
        TileKind::T => 0,
        TileKind::M => 1,
    }
}

/// Cost-to-go table: `ctg[c][v]` = fewest monomino edges on any walk from
/// (v, c) to (node 0, n), or `INF` when no such walk exists.
fn cost_to_go(solver: &Solver, n: usize) -> Result<Vec<Vec<u32>>> {
    let g = solver.digraph();
    let nodes = g.node_count();
    solver.limits().check_mem(
        &format!("DP table for width {} length {n}", g.width()),
        (n as u64 + 1) * nodes as u64 * 4,
    )?;

    let levels = solver.bwd_levels();
    let mut ctg: Vec<Vec<u32>> = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        ctg.push(Vec::new());
    }
    let mut final_layer = vec![INF; nodes];
    // No zero-column edge enters the empty fringe (a flush always absorbs at
    // least one column), so node 0 is the only finite entry at layer n.
    final_layer[0] = 0;
    ctg[n] = final_layer;

    let max_level_len = (0..levels.level_count())
        .map(|l| levels.level(l).len())
        .max()
        .unwrap_or(0);
    let mut scratch = vec![INF; max_level_len];

    for c in (0..n).rev() {
        let mut cur = vec![INF; nodes];
        for l in 0..levels.level_count() {
            let level = levels.level(l);
            let out = &mut scratch[..level.len()];
            par::for_each_out_chunk(solver.exec(), out, CHUNK, |base, out_chunk| {
                for (i, slot) in out_chunk.iter_mut().enumerate() {
                    let v = level[base + i];
                    let mut best = INF;
                    for e in g.out_edges(v) {
                        let k = e.cols as usize;
                        if c + k > n {
                            continue;
                        }
                        let next = if k == 0 {
                            cur[e.to as usize]
                        } else {
                            ctg[c + k][e.to as usize]
                        };
                        if next == INF {
                            continue;
                        }
                        best = best.min(next + edge_cost(e.kind()));
                    }
                    *slot = best;
                }
            });
            for (i, &v) in level.iter().enumerate() {
                cur[v as usize] = scratch[i];
            }
        }
        ctg[c] = cur;
    }
    Ok(ctg)
}

/// Gap number plus witness tiling for one rectangle.
pub(crate) fn solve_with_witness(solver: &Solver, n: usize) -> Result<(u64, Tiling)> {
    let g = solver.digraph();
    let w = g.width();
    let ctg = cost_to_go(solver, n)?;
    let total = ctg[0][0];
    if total == INF {
        // The all-monomino walk always exists, so this is unreachable.
        return Err(Error::InvalidArgument(format!(
            "internal: no tiling found for {w}x{n}"
        )));
    }

    let mut placements = Vec::new();
    let mut node = 0u32;
    let mut c = 0usize;
    while !(node == 0 && c == n) {
        let here = ctg[c][node as usize];
        let mut taken = false;
        for e in g.out_edges(node) {
            let k = e.cols as usize;
            if c + k > n {
                continue;
            }
            let next = if ctg[c + k][e.to as usize] == INF {
                continue;
            } else {
                ctg[c + k][e.to as usize]
            };
            if next + edge_cost(e.kind()) == here {
                // Monomino edges always land in the first frontier column,
                // i.e. absolute column c+1.
                debug_assert!(
                    e.kind() != TileKind::M || e.placement().anchor().col == 1
                );
                placements.push(e.placement().translated(c as u32));
                node = e.to;
                c += k;
                taken = true;
                break;
            }
        }
        debug_assert!(taken, "optimal walk must continue from ({node}, {c})");
        if !taken {
            return Err(Error::InvalidArgument(
                "internal: witness reconstruction stuck".into(),
            ));
        }
    }

    let tiling = Tiling::new(w, n, placements);
    debug_assert_eq!(tiling.monomino_count as u64, total as u64);
    Ok((total as u64, tiling))
}

/// Gap numbers for all lengths up to `n_max` from one forward sweep with a
/// four-layer ring buffer (placements absorb at most three columns).
pub(crate) fn solve_values_bulk(solver: &Solver, n_max: usize) -> Result<Vec<u64>> {
    let g = solver.digraph();
    let nodes = g.node_count();
    let rev = solver.rev_adjacency();
    let levels = solver.fwd_levels();

    let mut ring: [Vec<u32>; 4] = [
        vec![INF; nodes],
        vec![INF; nodes],
        vec![INF; nodes],
        vec![INF; nodes],
    ];
    let mut results = vec![0u64; n_max + 1];

    let max_level_len = (0..levels.level_count())
        .map(|l| levels.level(l).len())
        .max()
        .unwrap_or(0);
    let mut scratch = vec![INF; max_level_len];

    for c in 0..=n_max {
        let mut cur = std::mem::take(&mut ring[c % 4]);
        cur.fill(INF);
        for l in 0..levels.level_count() {
            let level = levels.level(l);
            let out = &mut scratch[..level.len()];
            par::for_each_out_chunk(solver.exec(), out, CHUNK, |base, out_chunk| {
                for (i, slot) in out_chunk.iter_mut().enumerate() {
                    let v = level[base + i];
                    let mut best = if c == 0 && v == 0 { 0 } else { INF };
                    for (u, eid) in rev.in_entries(v) {
                        let e = g.edge(eid);
                        let k = e.cols as usize;
                        let from = if k == 0 {
                            cur[u as usize]
                        } else if c >= k {
                            ring[(c - k) % 4][u as usize]
                        } else {
                            continue;
                        };
                        if from == INF {
                            continue;
                        }
                        best = best.min(from + edge_cost(e.kind()));
                    }
                    *slot = best;
                }
            });
            for (i, &v) in level.iter().enumerate() {
                cur[v as usize] = scratch[i];
            }
        }
        debug_assert!(cur[0] != INF, "empty fringe reachable at every layer");
        results[c] = cur[0] as u64;
        ring[c % 4] = cur;
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::FringeDigraph;
    use crate::par::ExecMode;

    #[test]
    fn width_1_gap_equals_length() {
        let g = FringeDigraph::build(1).unwrap();
        let solver = Solver::new(&g);
        let r = solver.gap_number(7).unwrap();
        assert_eq!(r.gap_number, 7);
        assert_eq!(r.witness.validate(), Ok(7));
    }

    #[test]
    fn two_by_two_needs_four() {
        let g = FringeDigraph::build(2).unwrap();
        let solver = Solver::new(&g);
        assert_eq!(solver.gap_number(2).unwrap().gap_number, 4);
    }

    #[test]
    fn three_by_three_needs_five() {
        let g = FringeDigraph::build(3).unwrap();
        let solver = Solver::new(&g);
        let r = solver.gap_number(3).unwrap();
        assert_eq!(r.gap_number, 5);
        assert_eq!(r.witness.validate(), Ok(5));
    }

    #[test]
    fn four_by_four_tiles_without_monominoes() {
        let g = FringeDigraph::build(4).unwrap();
        let solver = Solver::new(&g);
        let r = solver.gap_number(4).unwrap();
        assert_eq!(r.gap_number, 0);
        assert_eq!(r.witness.placements.len(), 4);
        assert_eq!(r.witness.validate(), Ok(0));
    }

    #[test]
    fn bulk_values_match_single_solves() {
        let g = FringeDigraph::build(3).unwrap();
        let solver = Solver::new(&g);
        let bulk = solver.gap_numbers_up_to(12).unwrap();
        for n in 1..=12 {
            assert_eq!(bulk[n], solver.gap_number(n).unwrap().gap_number, "n={n}");
        }
    }

    #[test]
    fn sequential_and_parallel_witnesses_are_identical() {
        let g = FringeDigraph::build(4).unwrap();
        let seq = Solver::new(&g).with_exec(ExecMode::Sequential);
        let par = Solver::new(&g).with_exec(ExecMode::Parallel);
        for n in 1..=9 {
            assert_eq!(seq.gap_number(n).unwrap(), par.gap_number(n).unwrap());
        }
    }

    #[test]
    fn reruns_return_identical_witnesses() {
        let g = FringeDigraph::build(5).unwrap();
        let solver = Solver::new(&g);
        let a = solver.gap_number(8).unwrap();
        let b = solver.gap_number(8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn length_zero_rejected() {
        let g = FringeDigraph::build(2).unwrap();
        let solver = Solver::new(&g);
        assert!(matches!(
            solver.gap_number(0),
            Err(Error::InvalidLength { .. })
        ));
    }

    #[test]
    fn dp_capacity_error_is_clean() {
        let g = FringeDigraph::build(5).unwrap();
        let limits = crate::limits::Limits {
            mem_cap_mb: 0,
            relax_budget: 0,
        };
        let solver = Solver::new(&g).with_limits(limits);
        assert!(matches!(
            solver.gap_number(1000),
            Err(Error::CapacityExceeded { .. })
        ));
    }
}
