//! Validated tilings of a rectangle.

use serde::{Deserialize, Serialize};

use crate::geometry::{CellCoord, Placement, TileKind};

/// A set of placements intended to cover a `width x length` rectangle
/// exactly. Columns run `1..=length`, rows `1..=width` (row 1 at the
/// bottom), matching the strip convention used everywhere else.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub width: usize,
    pub length: usize,
    pub placements: Vec<Placement>,
    pub monomino_count: usize,
}

/// First violation found while validating a tiling, with the offending
/// coordinates where applicable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingViolation {
    pub description: String,
    pub at: Option<CellCoord>,
}

impl std::fmt::Display for TilingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.at {
            Some(c) => write!(f, "{} at (col {}, row {})", self.description, c.col, c.row),
            None => write!(f, "{}", self.description),
        }
    }
}

impl Tiling {
    pub fn new(width: usize, length: usize, placements: Vec<Placement>) -> Tiling {
        let monomino_count = placements
            .iter()
            .filter(|p| p.kind() == TileKind::M)
            .count();
        Tiling {
            width,
            length,
            placements,
            monomino_count,
        }
    }

    /// Checks in-bounds cells, pairwise disjointness and exact coverage, and
    /// that the monomino count matches. T-shape correctness is enforced by
    /// deriving each tile's cells from its orientation offsets. Returns the
    /// monomino count on success, or the first violation found.
    pub fn validate(&self) -> Result<usize, TilingViolation> {
        let (w, n) = (self.width, self.length);
        if w == 0 || n == 0 {
            return Err(TilingViolation {
                description: format!("degenerate rectangle {w}x{n}"),
                at: None,
            });
        }
        let mut covered = vec![false; w * n];
        let mut monominoes = 0usize;
        for p in &self.placements {
            if p.kind() == TileKind::M {
                monominoes += 1;
            }
            for cell in p.cells() {
                let (col, row) = (cell.col as usize, cell.row as usize);
                if col < 1 || col > n || row < 1 || row > w {
                    return Err(TilingViolation {
                        description: format!("cell outside the {w}x{n} rectangle"),
                        at: Some(cell),
                    });
                }
                let idx = (col - 1) * w + (row - 1);
                if covered[idx] {
                    return Err(TilingViolation {
                        description: "cell covered twice".into(),
                        at: Some(cell),
                    });
                }
                covered[idx] = true;
            }
        }
        if let Some(idx) = covered.iter().position(|&c| !c) {
            let (col, row) = (idx / w + 1, idx % w + 1);
            return Err(TilingViolation {
                description: "cell left uncovered".into(),
                at: Some(CellCoord::new(col as u32, row as u32)),
            });
        }
        if monominoes != self.monomino_count {
            return Err(TilingViolation {
                description: format!(
                    "monomino_count field is {}, placements contain {monominoes}",
                    self.monomino_count
                ),
                at: None,
            });
        }
        Ok(monominoes)
    }
}

/// A 3x9 tiling with three monominoes, entered by hand for tests: six
/// T-tetrominoes and monominoes at (2,3), (5,2) and (8,1).
#[cfg(test)]
pub(crate) fn hand_3x9() -> Tiling {
    use crate::geometry::Orientation;
    let t = |orientation, col, row| Placement::T {
        orientation,
        anchor: CellCoord::new(col, row),
    };
    let m = |col, row| Placement::M {
        anchor: CellCoord::new(col, row),
    };
    Tiling::new(
        3,
        9,
        vec![
            t(Orientation::BarVerticalStemRight, 1, 1),
            t(Orientation::BarHorizontalStemUp, 2, 1),
            m(2, 3),
            t(Orientation::BarHorizontalStemDown, 3, 3),
            t(Orientation::BarHorizontalStemUp, 5, 1),
            m(5, 2),
            t(Orientation::BarHorizontalStemDown, 6, 3),
            m(8, 1),
            t(Orientation::BarVerticalStemLeft, 9, 1),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_entered_3x9_is_valid_with_three_monominoes() {
        let tiling = hand_3x9();
        assert_eq!(tiling.validate(), Ok(3));
        assert_eq!(tiling.monomino_count, 3);
    }

    #[test]
    fn all_monomino_tiling_is_valid() {
        for (w, n) in [(1usize, 1usize), (2, 3), (4, 5)] {
            let placements: Vec<Placement> = (1..=n)
                .flat_map(|col| {
                    (1..=w).map(move |row| Placement::M {
                        anchor: CellCoord::new(col as u32, row as u32),
                    })
                })
                .collect();
            let tiling = Tiling::new(w, n, placements);
            assert_eq!(tiling.validate(), Ok(w * n));
        }
    }

    #[test]
    fn removing_any_placement_breaks_coverage() {
        let full = hand_3x9();
        for skip in 0..full.placements.len() {
            let mut placements = full.placements.clone();
            placements.remove(skip);
            let tiling = Tiling::new(3, 9, placements);
            let err = tiling.validate().unwrap_err();
            assert_eq!(err.description, "cell left uncovered");
            assert!(err.at.is_some());
        }
    }

    #[test]
    fn out_of_bounds_and_overlap_are_reported_with_coordinates() {
        let mut bad = hand_3x9();
        bad.placements.push(Placement::M {
            anchor: CellCoord::new(10, 1),
        });
        bad.monomino_count += 1;
        let err = bad.validate().unwrap_err();
        assert_eq!(err.at, Some(CellCoord::new(10, 1)));

        let mut overlap = hand_3x9();
        overlap.placements.push(Placement::M {
            anchor: CellCoord::new(1, 1),
        });
        overlap.monomino_count += 1;
        let err = overlap.validate().unwrap_err();
        assert_eq!(err.description, "cell covered twice");
        assert_eq!(err.at, Some(CellCoord::new(1, 1)));
    }
}
