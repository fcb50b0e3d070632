//! Independent brute-force gap numbers over raw grids.
//!
//! Exhaustive branch-and-bound on a bitboard: find the first uncovered cell
//! in column-major bottom-up order, branch on covering it with each fitting
//! T placement or a monomino, prune with the best tiling found so far and
//! the mod-4 cell congruence. No fringe machinery is involved; the only
//! shared ingredient is the declarative orientation offset table, so
//! agreement with the DP solver is meaningful evidence for both.

use crate::error::{Error, Result};
use crate::geometry::ORIENTATIONS;

/// Limits for the exhaustive search.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Largest rectangle area accepted, in cells (the grid is one machine
    /// word, so 64 is also a hard ceiling).
    pub area_cap: usize,
    /// Search-node limit; exceeding it is an error, never a wrong answer.
    pub node_budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            area_cap: 64,
            node_budget: 20_000_000_000,
        }
    }
}

struct Search {
    full: u64,
    /// Candidate T masks per cell index, each covering that cell and only
    /// cells at equal or higher index.
    masks: Vec<Vec<u64>>,
    budget: u64,
    nodes: u64,
    best: u32,
}

/// Exact minimum monomino count for a `w x n` rectangle by exhaustive
/// search. Cells are indexed `(col-1)*w + (row-1)`.
pub fn brute_gap_number(w: usize, n: usize, cfg: &OracleConfig) -> Result<u64> {
    if w == 0 || n == 0 {
        return Err(Error::InvalidArgument(
            "oracle needs positive dimensions".into(),
        ));
    }
    let area = w * n;
    if area > cfg.area_cap.min(64) {
        return Err(Error::CapacityExceeded {
            what: format!("oracle grid {w}x{n} ({area} cells)"),
            needed_mb: 0,
            cap_mb: 0,
        });
    }

    // Precompute, for every cell, the masks of T placements that cover it
    // while touching no earlier cell: any completion must cover the first
    // open cell, and earlier cells are already covered, so these masks plus
    // the monomino enumerate every branch exactly once.
    let cell = |col: i64, row: i64| -> Option<usize> {
        if (1..=n as i64).contains(&col) && (1..=w as i64).contains(&row) {
            Some(((col - 1) * w as i64 + (row - 1)) as usize)
        } else {
            None
        }
    };
    let mut masks: Vec<Vec<u64>> = vec![Vec::new(); area];
    for target in 0..area {
        let t_col = (target / w + 1) as i64;
        let t_row = (target % w + 1) as i64;
        for orientation in ORIENTATIONS {
            let offsets = orientation.offsets();
            for align in 0..4 {
                let (adc, adr) = offsets[align];
                let mut mask = 0u64;
                let mut ok = true;
                for &(dc, dr) in &offsets {
                    let col = t_col + (dc - adc) as i64;
                    let row = t_row + (dr - adr) as i64;
                    match cell(col, row) {
                        Some(idx) if idx >= target => mask |= 1u64 << idx,
                        // A cell before the target is already covered, and
                        // out of bounds never fits.
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok && !masks[target].contains(&mask) {
                    masks[target].push(mask);
                }
            }
        }
    }

    let mut search = Search {
        full: if area == 64 {
            u64::MAX
        } else {
            (1u64 << area) - 1
        },
        masks,
        budget: cfg.node_budget,
        nodes: 0,
        best: area as u32,
    };
    search.run(0, 0)?;
    Ok(search.best as u64)
}

impl Search {
    fn run(&mut self, grid: u64, monominoes: u32) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted {
                what: "oracle search".into(),
                budget: self.budget,
            });
        }
        if grid == self.full {
            if monominoes < self.best {
                self.best = monominoes;
            }
            return Ok(());
        }
        // Remaining cells split into T-tiles and monominoes, so at least
        // (remaining mod 4) more monominoes are unavoidable.
        let remaining = (self.full & !grid).count_ones();
        if monominoes + remaining % 4 >= self.best {
            return Ok(());
        }
        let target = (!grid).trailing_zeros() as usize;
        debug_assert!(target < self.masks.len());
        for i in 0..self.masks[target].len() {
            let mask = self.masks[target][i];
            if grid & mask == 0 {
                self.run(grid | mask, monominoes)?;
            }
        }
        self.run(grid | (1u64 << target), monominoes + 1)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_rectangles() {
        let cfg = OracleConfig::default();
        assert_eq!(brute_gap_number(1, 1, &cfg).unwrap(), 1);
        assert_eq!(brute_gap_number(1, 5, &cfg).unwrap(), 5);
        assert_eq!(brute_gap_number(2, 2, &cfg).unwrap(), 4);
        // One T fits a 2x3 box; congruence forbids fewer than 2 gaps.
        assert_eq!(brute_gap_number(2, 3, &cfg).unwrap(), 2);
        assert_eq!(brute_gap_number(3, 4, &cfg).unwrap(), 4);
        assert_eq!(brute_gap_number(4, 4, &cfg).unwrap(), 0);
    }

    #[test]
    fn transpose_agreement_on_small_grids() {
        let cfg = OracleConfig::default();
        for (a, b) in [(2, 5), (3, 5), (4, 5), (3, 7)] {
            assert_eq!(
                brute_gap_number(a, b, &cfg).unwrap(),
                brute_gap_number(b, a, &cfg).unwrap(),
                "{a}x{b}"
            );
        }
    }

    #[test]
    fn area_cap_and_budget_errors_are_distinct() {
        let cfg = OracleConfig {
            area_cap: 10,
            node_budget: 1_000,
        };
        assert!(matches!(
            brute_gap_number(4, 4, &cfg),
            Err(Error::CapacityExceeded { .. })
        ));
        let tight = OracleConfig {
            area_cap: 64,
            node_budget: 3,
        };
        assert!(matches!(
            brute_gap_number(3, 3, &tight),
            Err(Error::BudgetExhausted { .. })
        ));
    }
}
