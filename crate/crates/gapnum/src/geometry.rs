//! Grid model: tile orientations, fringe states and the greedy placement
//! rule.
//!
//! A width-`w` strip is tiled left to right, always covering the lowest
//! untiled square of the leftmost incomplete column. Both tile kinds fit in
//! a 2x3 box, so at most three columns are ever partially tiled; those
//! columns form the [`Fringe`]. Rows are numbered `1..=w` with row 1 at the
//! bottom, columns from 1 going right.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Widest strip supported by the packed fringe encoding: 3 columns * 21
/// rows = 63 bits in a `u64`.
pub const MAX_WIDTH: usize = 21;

/// Number of frontier columns a fringe can hold.
pub const FRINGE_COLS: usize = 3;

/// A cell position. `col` counts along the strip length, `row` within the
/// strip width; both are 1-based and row 1 is the bottom of the strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellCoord {
    pub col: u32,
    pub row: u32,
}

impl CellCoord {
    pub fn new(col: u32, row: u32) -> Self {
        CellCoord { col, row }
    }
}

/// The four rotations of the T-tetromino. The tile is mirror-symmetric, so
/// rotations exhaust all placements.
///
/// Offsets are `(dcol, drow)` from the anchor cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Vertical bar of three cells with the stem pointing right:
    /// `{(0,0),(0,1),(0,2),(+1,1)}`.
    BarVerticalStemRight,
    /// Vertical bar with the stem pointing left: `{(0,0),(0,1),(0,2),(-1,1)}`.
    BarVerticalStemLeft,
    /// Horizontal bar of three cells with the stem pointing up:
    /// `{(0,0),(1,0),(2,0),(1,+1)}`.
    BarHorizontalStemUp,
    /// Horizontal bar with the stem pointing down: `{(0,0),(1,0),(2,0),(1,-1)}`.
    BarHorizontalStemDown,
}

/// Fixed enumeration order used everywhere placements are generated, so that
/// node and edge numbering is reproducible.
pub const ORIENTATIONS: [Orientation; 4] = [
    Orientation::BarVerticalStemRight,
    Orientation::BarVerticalStemLeft,
    Orientation::BarHorizontalStemUp,
    Orientation::BarHorizontalStemDown,
];

impl Orientation {
    /// Cell offsets `(dcol, drow)` relative to the anchor.
    pub const fn offsets(self) -> [(i32, i32); 4] {
        match self {
            Orientation::BarVerticalStemRight => [(0, 0), (0, 1), (0, 2), (1, 1)],
            Orientation::BarVerticalStemLeft => [(0, 0), (0, 1), (0, 2), (-1, 1)],
            Orientation::BarHorizontalStemUp => [(0, 0), (1, 0), (2, 0), (1, 1)],
            Orientation::BarHorizontalStemDown => [(0, 0), (1, 0), (2, 0), (1, -1)],
        }
    }

    /// Offset of the lowest cell in the tile's leftmost column. The greedy
    /// rule forces this cell onto the target square, which pins down the
    /// anchor: everything left of the target is already tiled and everything
    /// below it in the target's column is tiled, so no other cell of the
    /// tile may land there.
    pub const fn leading_offset(self) -> (i32, i32) {
        match self {
            Orientation::BarVerticalStemRight => (0, 0),
            Orientation::BarVerticalStemLeft => (-1, 1),
            Orientation::BarHorizontalStemUp => (0, 0),
            Orientation::BarHorizontalStemDown => (0, 0),
        }
    }

    pub const fn index(self) -> u8 {
        match self {
            Orientation::BarVerticalStemRight => 0,
            Orientation::BarVerticalStemLeft => 1,
            Orientation::BarHorizontalStemUp => 2,
            Orientation::BarHorizontalStemDown => 3,
        }
    }

    pub const fn from_index(i: u8) -> Option<Orientation> {
        match i {
            0 => Some(Orientation::BarVerticalStemRight),
            1 => Some(Orientation::BarVerticalStemLeft),
            2 => Some(Orientation::BarHorizontalStemUp),
            3 => Some(Orientation::BarHorizontalStemDown),
            _ => None,
        }
    }
}

/// Which tile a placement or digraph edge corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TileKind {
    T,
    M,
}

/// One tile at absolute (or fringe-relative) coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Placement {
    T {
        orientation: Orientation,
        anchor: CellCoord,
    },
    M {
        anchor: CellCoord,
    },
}

impl Placement {
    pub fn kind(&self) -> TileKind {
        match self {
            Placement::T { .. } => TileKind::T,
            Placement::M { .. } => TileKind::M,
        }
    }

    pub fn anchor(&self) -> CellCoord {
        match self {
            Placement::T { anchor, .. } | Placement::M { anchor } => *anchor,
        }
    }

    /// Number of cells the tile covers.
    pub fn cell_count(&self) -> usize {
        match self {
            Placement::T { .. } => 4,
            Placement::M { .. } => 1,
        }
    }

    /// The covered cells. For a monomino this is just the anchor. Offsets
    /// may produce col/row 0 for out-of-bounds anchors; callers validate.
    pub fn cells(&self) -> Vec<CellCoord> {
        match self {
            Placement::M { anchor } => vec![*anchor],
            Placement::T {
                orientation,
                anchor,
            } => orientation
                .offsets()
                .iter()
                .map(|&(dc, dr)| {
                    CellCoord::new(
                        (anchor.col as i64 + dc as i64) as u32,
                        (anchor.row as i64 + dr as i64) as u32,
                    )
                })
                .collect(),
        }
    }

    /// Shifts a fringe-relative placement to absolute coordinates: a
    /// placement taken after `absorbed` columns were flushed lives at
    /// absolute column `absorbed + relative col`.
    pub fn translated(&self, col_offset: u32) -> Placement {
        let shift = |anchor: CellCoord| CellCoord::new(anchor.col + col_offset, anchor.row);
        match self {
            Placement::T {
                orientation,
                anchor,
            } => Placement::T {
                orientation: *orientation,
                anchor: shift(*anchor),
            },
            Placement::M { anchor } => Placement::M {
                anchor: shift(*anchor),
            },
        }
    }
}

/// The up-to-three partially tiled columns at the tiling frontier.
///
/// Bit `(col-1)*w + (row-1)` of `bits` marks cell `(col, row)` tiled, for
/// `col in 1..=3` and `row in 1..=w`. Canonical form: fully tiled leading
/// columns are flushed, so column 1 is neither empty nor full unless the
/// whole fringe is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fringe {
    width: u8,
    bits: u64,
}

impl Fringe {
    /// The empty fringe for a width-`w` strip.
    pub fn empty(width: usize) -> Result<Fringe> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::InvalidWidth {
                width,
                max: MAX_WIDTH,
            });
        }
        Ok(Fringe {
            width: width as u8,
            bits: 0,
        })
    }

    /// Rebuilds a fringe from its packed bit key (used by digraph import).
    /// The key must already be canonical.
    pub fn from_bits(width: usize, bits: u64) -> Result<Fringe> {
        let f = Fringe::empty(width)?;
        let f = Fringe { bits, ..f };
        if bits >> (3 * width) != 0 {
            return Err(Error::InvalidDocument(format!(
                "fringe key {bits:#x} has bits beyond 3*{width}"
            )));
        }
        if !f.is_canonical() {
            return Err(Error::InvalidDocument(format!(
                "fringe key {bits:#x} is not canonical for width {width}"
            )));
        }
        Ok(f)
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    /// Packed 3*w-bit key; canonical fringes have canonical keys, so this is
    /// usable directly as a hash-map key.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn count_tiled(&self) -> u32 {
        self.bits.count_ones()
    }

    fn col_mask(&self, col: u32) -> u64 {
        let w = self.width as u32;
        (((1u64 << w) - 1) << ((col - 1) * w)) & Self::full_mask(w)
    }

    fn full_mask(w: u32) -> u64 {
        if 3 * w == 64 {
            u64::MAX
        } else {
            (1u64 << (3 * w)) - 1
        }
    }

    fn cell_bit(&self, col: u32, row: u32) -> u64 {
        let w = self.width as u32;
        1u64 << ((col - 1) * w + (row - 1))
    }

    pub fn is_tiled(&self, col: u32, row: u32) -> bool {
        debug_assert!((1..=FRINGE_COLS as u32).contains(&col));
        debug_assert!((1..=self.width as u32).contains(&row));
        self.bits & self.cell_bit(col, row) != 0
    }

    fn col_is_full(&self, col: u32) -> bool {
        self.bits & self.col_mask(col) == self.col_mask(col)
    }

    fn col_is_empty(&self, col: u32) -> bool {
        self.bits & self.col_mask(col) == 0
    }

    /// True when leading full columns have been flushed.
    pub fn is_canonical(&self) -> bool {
        if self.bits == 0 {
            return true;
        }
        !self.col_is_full(1) && !self.col_is_empty(1)
    }

    /// The lowest untiled square of the leftmost incomplete column, in
    /// fringe-relative coordinates. Canonical fringes always have their
    /// target in column 1.
    pub fn target_cell(&self) -> CellCoord {
        let mut col = 1u32;
        while col < FRINGE_COLS as u32 && self.col_is_full(col) {
            col += 1;
        }
        let w = self.width as u32;
        let col_bits = (self.bits >> ((col - 1) * w)) & ((1u64 << w) - 1);
        let row = (!col_bits).trailing_zeros() + 1;
        CellCoord::new(col, row)
    }

    /// Every placement that covers the target square, stays inside the strip
    /// and overlaps nothing. The monomino is always present; at most one
    /// position per T orientation qualifies (see
    /// [`Orientation::leading_offset`]), so there are between 1 and 5
    /// entries, in the fixed order `ORIENTATIONS` then monomino.
    pub fn legal_placements(&self) -> Vec<Placement> {
        let mut out = Vec::with_capacity(5);
        self.for_each_legal_placement(|p| out.push(p));
        out
    }

    /// Zero-allocation variant of [`legal_placements`] used in digraph
    /// construction.
    ///
    /// [`legal_placements`]: Fringe::legal_placements
    pub fn for_each_legal_placement(&self, mut visit: impl FnMut(Placement)) {
        let target = self.target_cell();
        for orientation in ORIENTATIONS {
            if let Some(p) = self.t_placement_at_target(orientation, target) {
                visit(p);
            }
        }
        visit(Placement::M { anchor: target });
    }

    fn t_placement_at_target(
        &self,
        orientation: Orientation,
        target: CellCoord,
    ) -> Option<Placement> {
        let (lead_dc, lead_dr) = orientation.leading_offset();
        let anchor_col = target.col as i64 - lead_dc as i64;
        let anchor_row = target.row as i64 - lead_dr as i64;
        let w = self.width as i64;
        let mut mask = 0u64;
        for (dc, dr) in orientation.offsets() {
            let col = anchor_col + dc as i64;
            let row = anchor_row + dr as i64;
            if !(1..=FRINGE_COLS as i64).contains(&col) || !(1..=w).contains(&row) {
                return None;
            }
            mask |= self.cell_bit(col as u32, row as u32);
        }
        if self.bits & mask != 0 {
            return None;
        }
        Some(Placement::T {
            orientation,
            anchor: CellCoord::new(anchor_col as u32, anchor_row as u32),
        })
    }

    /// Bit mask of the placement's cells, or `None` if any cell is out of
    /// bounds.
    fn placement_mask(&self, p: &Placement) -> Option<u64> {
        let w = self.width as i64;
        let mut mask = 0u64;
        for cell in p.cells() {
            let (col, row) = (cell.col as i64, cell.row as i64);
            if !(1..=FRINGE_COLS as i64).contains(&col) || !(1..=w).contains(&row) {
                return None;
            }
            mask |= self.cell_bit(col as u32, row as u32);
        }
        Some(mask)
    }

    /// Applies a legal placement: marks its cells, flushes fully tiled
    /// leading columns and returns the canonical successor together with the
    /// number of columns absorbed and the tile kind.
    ///
    /// Rejects placements not produced by [`legal_placements`]; that always
    /// indicates a caller bug.
    ///
    /// [`legal_placements`]: Fringe::legal_placements
    pub fn advance(&self, p: &Placement) -> Result<(Fringe, u32, TileKind)> {
        if !self.legal_placements().contains(p) {
            return Err(Error::IllegalPlacement(format!(
                "{p:?} is not a legal placement for fringe {:#x} (width {})",
                self.bits, self.width
            )));
        }
        Ok(self.advance_unchecked(p))
    }

    /// `advance` without the membership check. Callers must pass a placement
    /// obtained from `legal_placements`/`for_each_legal_placement` on this
    /// exact fringe.
    pub(crate) fn advance_unchecked(&self, p: &Placement) -> (Fringe, u32, TileKind) {
        let mask = self
            .placement_mask(p)
            .expect("placement cells out of bounds");
        debug_assert_eq!(self.bits & mask, 0, "placement overlaps tiled cells");
        let w = self.width as u32;
        let mut bits = self.bits | mask;
        let mut absorbed = 0u32;
        let col1 = (1u64 << w) - 1;
        while bits != 0 && bits & col1 == col1 {
            bits >>= w;
            absorbed += 1;
        }
        let next = Fringe {
            width: self.width,
            bits,
        };
        debug_assert!(next.is_canonical());
        debug_assert!(absorbed <= FRINGE_COLS as u32);
        // Cell conservation: old bits + tile cells = new bits + w per
        // absorbed column.
        debug_assert_eq!(
            self.bits.count_ones() + p.cell_count() as u32,
            bits.count_ones() + w * absorbed
        );
        (next, absorbed, p.kind())
    }
}
