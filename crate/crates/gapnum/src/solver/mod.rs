//! Exact gap numbers with witness tilings, monomino-free run lengths and
//! periodic (cylinder) tilings, all computed over one fringe digraph.

mod cylinder;
mod dp;
mod formulas;
mod runs;
mod tiling;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bound::{self, Density};
use crate::digraph::FringeDigraph;
use crate::error::{Error, Result};
use crate::graphops::{self, LevelGroups, RevAdjacency, TSccs};
use crate::limits::Limits;
use crate::par::ExecMode;

pub use cylinder::CylinderWitness;
pub use formulas::{decomposition_bound, expected_gap_number, DecompositionBound, StripPiece};
pub use runs::{RunLength, RunResult};
pub use tiling::{Tiling, TilingViolation};

/// Longest rectangle the layered DP accepts. Memory is the real limit and is
/// checked against [`Limits`] before allocation.
pub const MAX_LENGTH: usize = 1_000_000;

/// How a gap number was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMethod {
    Dp,
    Oracle,
}

/// An exact gap number together with its evidence: a witness tiling using
/// exactly that many monominoes and the density lower bound it was checked
/// against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapResult {
    pub width: usize,
    pub length: usize,
    pub gap_number: u64,
    pub witness: Tiling,
    pub lower_bound_used: u64,
    pub method: SolveMethod,
}

/// Solver over one immutable fringe digraph. Derived structures (reverse
/// adjacency, topological levels, T-subgraph components, the density bound)
/// are computed once on first use and shared by all operations.
pub struct Solver<'g> {
    g: &'g FringeDigraph,
    limits: Limits,
    exec: ExecMode,
    rev: OnceLock<RevAdjacency>,
    fwd_levels: OnceLock<LevelGroups>,
    bwd_levels: OnceLock<LevelGroups>,
    t_topo: OnceLock<Option<Vec<u32>>>,
    t_sccs: OnceLock<TSccs>,
    density: OnceLock<Density>,
}

impl<'g> Solver<'g> {
    pub fn new(g: &'g FringeDigraph) -> Solver<'g> {
        Solver {
            g,
            limits: Limits::default(),
            exec: ExecMode::default(),
            rev: OnceLock::new(),
            fwd_levels: OnceLock::new(),
            bwd_levels: OnceLock::new(),
            t_topo: OnceLock::new(),
            t_sccs: OnceLock::new(),
            density: OnceLock::new(),
        }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn with_exec(mut self, exec: ExecMode) -> Self {
        self.exec = exec;
        self
    }

    pub fn digraph(&self) -> &FringeDigraph {
        self.g
    }

    pub fn width(&self) -> usize {
        self.g.width()
    }

    pub(crate) fn limits(&self) -> &Limits {
        &self.limits
    }

    pub(crate) fn exec(&self) -> ExecMode {
        self.exec
    }

    pub(crate) fn rev_adjacency(&self) -> &RevAdjacency {
        self.rev.get_or_init(|| graphops::reverse_adjacency(self.g))
    }

    pub(crate) fn fwd_levels(&self) -> &LevelGroups {
        self.fwd_levels
            .get_or_init(|| graphops::zero_col_levels_forward(self.g))
    }

    pub(crate) fn bwd_levels(&self) -> &LevelGroups {
        self.bwd_levels
            .get_or_init(|| graphops::zero_col_levels_backward(self.g))
    }

    pub(crate) fn t_topo(&self) -> Option<&Vec<u32>> {
        self.t_topo
            .get_or_init(|| graphops::t_topo_order(self.g))
            .as_ref()
    }

    pub(crate) fn t_sccs(&self) -> &TSccs {
        self.t_sccs.get_or_init(|| graphops::t_sccs(self.g))
    }

    /// The density bound for this width (cached).
    pub fn density(&self) -> &Density {
        self.density.get_or_init(|| {
            bound::minimal_m_mode(self.g, self.exec).expect("minimal_m cannot fail")
        })
    }

    /// Exact gap number of the `width x n` rectangle with a witness tiling.
    ///
    /// Runs a shortest-path DP over states (digraph node, columns absorbed),
    /// costing 1 per monomino edge, from the empty fringe at column 0 to the
    /// empty fringe at column n. The witness is the minimum-cost walk with
    /// the lexicographically smallest edge-id sequence, so reruns return
    /// byte-identical tilings.
    pub fn gap_number(&self, n: usize) -> Result<GapResult> {
        if n == 0 || n > MAX_LENGTH {
            return Err(Error::InvalidLength {
                length: n,
                max: MAX_LENGTH,
            });
        }
        let (gap_number, witness) = dp::solve_with_witness(self, n)?;
        debug_assert_eq!(witness.monomino_count as u64, gap_number);
        debug_assert_eq!(witness.validate(), Ok(witness.monomino_count));
        let lower_bound_used = bound::monomino_lower_bound(self.density(), n);
        debug_assert!(gap_number >= lower_bound_used);
        Ok(GapResult {
            width: self.width(),
            length: n,
            gap_number,
            witness,
            lower_bound_used,
            method: SolveMethod::Dp,
        })
    }

    /// Gap numbers for every length `1..=n_max` in one forward sweep,
    /// without witnesses. `result[n]` is the gap number of `width x n`;
    /// `result[0]` is 0.
    pub fn gap_numbers_up_to(&self, n_max: usize) -> Result<Vec<u64>> {
        if n_max == 0 || n_max > MAX_LENGTH {
            return Err(Error::InvalidLength {
                length: n_max,
                max: MAX_LENGTH,
            });
        }
        dp::solve_values_bulk(self, n_max)
    }

    /// Longest monomino-free stretch of columns, or unbounded when the
    /// T-subgraph has a cycle.
    pub fn max_gapless_run(&self) -> RunResult {
        runs::max_gapless_run(self)
    }

    /// Searches for a closed walk absorbing exactly `period` columns with at
    /// most `max_monominoes` monomino edges. `Ok(None)` is an exhaustive
    /// negative, never a timeout; running out of budget is an error.
    pub fn cylinder_search(
        &self,
        period: usize,
        max_monominoes: usize,
    ) -> Result<Option<CylinderWitness>> {
        cylinder::search(self, period, max_monominoes)
    }
}
