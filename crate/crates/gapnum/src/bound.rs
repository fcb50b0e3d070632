//! Density lower bounds from weighted cycle analysis.
//!
//! Weight every T-edge -1 and every M-edge +m. If no directed cycle of the
//! fringe digraph has negative total weight, then any cycle with tau T-edges
//! and mu M-edges satisfies tau <= m * mu; such a cycle covers 4*tau + mu
//! cells, i.e. (4*tau + mu)/w columns, so a tiling needs at least one
//! monomino for every (4m+1)/w columns. The least such m gives the best
//! bound this scheme can produce, and the no-negative-cycle predicate is
//! monotone in m, so it is found by binary search.

use serde::{Deserialize, Serialize};

use crate::digraph::FringeDigraph;
use crate::error::Result;
use crate::geometry::TileKind;
use crate::graphops::{self, RevAdjacency};
use crate::par::{self, ExecMode};

/// Edge weights used by the cycle analysis. The T-weight is fixed at -1;
/// only the monomino weight varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundWeights {
    pub t_weight: i64,
    pub m_weight: i64,
}

impl BoundWeights {
    pub fn with_m(m: i64) -> Self {
        BoundWeights {
            t_weight: -1,
            m_weight: m,
        }
    }
}

/// An exact rational, kept reduced. Densities like 153/9 stay exact instead
/// of becoming floats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Ratio {
        assert!(den != 0);
        let g = gcd(num, den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// The density bound for one width: the least monomino weight admitting no
/// negative cycle, and the columns-per-monomino ratio it implies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityBound {
    pub width: usize,
    pub minimal_m: u64,
    /// Exactly (4 * minimal_m + 1) / width.
    pub columns_per_monomino: Ratio,
}

/// Result of the minimal-weight search. Widths whose T-subgraph contains a
/// cycle can tile unboundedly many columns without monominoes, so no finite
/// weight removes all negative cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Density {
    Finite(DensityBound),
    Unbounded,
}

impl Density {
    pub fn as_finite(&self) -> Option<&DensityBound> {
        match self {
            Density::Finite(b) => Some(b),
            Density::Unbounded => None,
        }
    }
}

// Relaxation passes split only when a pass spans enough nodes to amortize
// thread-pool dispatch; smaller graphs relax inline.
const CHUNK: usize = 65536;

/// One relaxation slot: current distance plus the in-edge that set it.
#[derive(Clone, Copy)]
struct Slot {
    dist: i64,
    pred_node: u32,
    pred_edge: u32,
}

const NO_PRED: u32 = u32::MAX;

/// True iff some directed cycle has negative total weight under T-weight -1
/// and M-weight `m`. Exact over integers.
///
/// Synchronous relaxation from a virtual super-source (all distances start
/// at 0, covering every cycle, not only those through node 0): after pass k
/// every distance equals the cheapest walk of at most k edges, so the values
/// stabilize within `node_count` passes exactly when no negative cycle
/// exists. A cycle in the predecessor graph whose weight verifies negative
/// ends the search early.
pub fn has_negative_cycle(g: &FringeDigraph, m: u64) -> bool {
    has_negative_cycle_mode(g, m, ExecMode::default())
}

pub fn has_negative_cycle_mode(g: &FringeDigraph, m: u64, mode: ExecMode) -> bool {
    let rev = graphops::reverse_adjacency(g);
    has_negative_cycle_with(g, &rev, m, mode)
}

pub(crate) fn has_negative_cycle_with(
    g: &FringeDigraph,
    rev: &RevAdjacency,
    m: u64,
    mode: ExecMode,
) -> bool {
    let n = g.node_count();
    let weights: Vec<i64> = (0..g.edge_count() as u32)
        .map(|e| match g.edge(e).kind() {
            TileKind::T => -1,
            TileKind::M => m as i64,
        })
        .collect();

    let init = Slot {
        dist: 0,
        pred_node: NO_PRED,
        pred_edge: NO_PRED,
    };
    let mut cur = vec![init; n];
    let mut next = vec![init; n];

    // Pass n+1 still improving something would certify a walk of more than
    // n edges beating every simple path, which requires a negative cycle.
    for _pass in 0..=n {
        let changed = relax_pass(rev, &weights, &cur, &mut next, mode);
        std::mem::swap(&mut cur, &mut next);
        if !changed {
            return false;
        }
        if let Some(cycle_weight) = pred_cycle_weight(&cur, &weights) {
            // Equal-weight predecessor cycles can appear at the tight m, so
            // only a verified negative total ends the search; otherwise the
            // pass-count criterion decides.
            if cycle_weight < 0 {
                return true;
            }
        }
    }
    true
}

fn relax_pass(
    rev: &RevAdjacency,
    weights: &[i64],
    cur: &[Slot],
    next: &mut [Slot],
    mode: ExecMode,
) -> bool {
    let changed = std::sync::atomic::AtomicBool::new(false);
    par::for_each_out_chunk(mode, next, CHUNK, |base, out| {
        let mut any = false;
        for (i, out_slot) in out.iter_mut().enumerate() {
            let v = (base + i) as u32;
            let mut slot = cur[v as usize];
            for (u, e) in rev.in_entries(v) {
                let cand = cur[u as usize].dist + weights[e as usize];
                if cand < slot.dist {
                    slot = Slot {
                        dist: cand,
                        pred_node: u,
                        pred_edge: e,
                    };
                    any = true;
                }
            }
            *out_slot = slot;
        }
        if any {
            changed.store(true, std::sync::atomic::Ordering::Relaxed);
        }
    });
    changed.into_inner()
}

/// Scans the predecessor graph for a cycle; returns the total weight of the
/// first one found. Each node on a predecessor cycle contributes the weight
/// of its recorded in-edge.
fn pred_cycle_weight(slots: &[Slot], weights: &[i64]) -> Option<i64> {
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let n = slots.len();
    let mut color = vec![WHITE; n];
    let mut path: Vec<u32> = Vec::new();
    for start in 0..n as u32 {
        if color[start as usize] != WHITE {
            continue;
        }
        path.clear();
        let mut v = start;
        loop {
            color[v as usize] = GRAY;
            path.push(v);
            let pred = slots[v as usize].pred_node;
            if pred == NO_PRED || color[pred as usize] == BLACK {
                break;
            }
            if color[pred as usize] == GRAY {
                // pred .. v is a cycle; sum the pred-edge weights along it.
                let pos = path
                    .iter()
                    .position(|&p| p == pred)
                    .expect("gray node is on the current path");
                let total: i64 = path[pos..]
                    .iter()
                    .map(|&node| weights[slots[node as usize].pred_edge as usize])
                    .sum();
                return Some(total);
            }
            v = pred;
        }
        for &p in &path {
            color[p as usize] = BLACK;
        }
    }
    None
}

/// The least integer m >= 0 with no negative cycle, or [`Density::Unbounded`]
/// when a T-only cycle makes every m fail.
pub fn minimal_m(g: &FringeDigraph) -> Result<Density> {
    minimal_m_mode(g, ExecMode::default())
}

pub fn minimal_m_mode(g: &FringeDigraph, mode: ExecMode) -> Result<Density> {
    // A T-only cycle has weight -tau < 0 under any m, so no finite m works.
    if graphops::t_topo_order(g).is_none() {
        return Ok(Density::Unbounded);
    }
    let rev = graphops::reverse_adjacency(g);
    // Safe upper bracket: a negative cycle decomposes into simple cycles,
    // each here having at least one M-edge and at most node_count T-edges,
    // so weight >= -node_count + m. Any m >= node_count is cycle-free;
    // 4 * node_count leaves margin and stays well inside i64.
    let mut lo = 0u64;
    let mut hi = 4 * g.node_count() as u64;
    debug_assert!(!has_negative_cycle_with(g, &rev, hi, mode));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if has_negative_cycle_with(g, &rev, mid, mode) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let w = g.width();
    Ok(Density::Finite(DensityBound {
        width: w,
        minimal_m: lo,
        columns_per_monomino: Ratio::new(4 * lo + 1, w as u64),
    }))
}

/// Converts a density bound into a per-rectangle monomino lower bound:
/// ceil(n * w / (4m + 1)). Unbounded density carries no information.
pub fn monomino_lower_bound(d: &Density, n: usize) -> u64 {
    match d {
        Density::Unbounded => 0,
        Density::Finite(b) => {
            let cells = n as u64 * b.width as u64;
            let den = 4 * b.minimal_m + 1;
            cells.div_ceil(den)
        }
    }
}
