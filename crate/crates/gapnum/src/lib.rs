//! Exact solver toolkit for the gap number of the T-tetromino: the minimum
//! number of monominoes in any tiling of a w x n rectangle by T-tetrominoes
//! and monominoes.
//!
//! The machinery is built on the fringe digraph of a width-w strip: tiles
//! are placed greedily onto the lowest untiled square of the leftmost
//! incomplete column, so the tiling frontier is always at most three
//! partially tiled columns. Each frontier state is a digraph node and each
//! legal placement an edge. On top of that graph the crate provides
//!
//! - density lower bounds from negative-cycle analysis of weighted edges,
//! - an exact layered shortest-path solver with witness tilings,
//! - longest monomino-free runs and periodic (cylinder) tilings,
//! - an independent brute-force oracle over raw grids.

pub mod bound;
pub mod digraph;
pub mod error;
pub mod geometry;
mod graphops;
pub mod limits;
pub mod oracle;
mod par;
pub mod reference;
pub mod solver;

pub use bound::{Density, DensityBound};
pub use digraph::{DigraphStats, FringeDigraph, FringeEdge};
pub use error::{Error, Result};
pub use geometry::{CellCoord, Fringe, Orientation, Placement, TileKind, MAX_WIDTH, ORIENTATIONS};
pub use limits::Limits;
pub use oracle::{brute_gap_number, OracleConfig};
pub use par::ExecMode;
pub use solver::{
    CylinderWitness, GapResult, RunLength, RunResult, SolveMethod, Solver, Tiling,
};
