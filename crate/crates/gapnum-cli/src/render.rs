//! Tiling renderers: ASCII (with a round-trip parser) and SVG.
//!
//! The ASCII form is contractual: a header line `w n gap_number`, then
//! exactly `w` lines of `n` characters with row `w` printed first and row 1
//! last. Each T-tetromino is one letter `a`..`z`, cycling in placement
//! order; monominoes render as `.`.

use gapnum::{CellCoord, Placement, TileKind, Tiling, ORIENTATIONS};

/// ASCII rendering of a validated tiling.
pub fn render_ascii(tiling: &Tiling) -> String {
    let (w, n) = (tiling.width, tiling.length);
    let mut grid = vec![b' '; w * n];
    let mut t_index = 0usize;
    for p in &tiling.placements {
        let ch = match p.kind() {
            TileKind::M => b'.',
            TileKind::T => {
                let ch = b'a' + (t_index % 26) as u8;
                t_index += 1;
                ch
            }
        };
        for cell in p.cells() {
            grid[(cell.col as usize - 1) * w + (cell.row as usize - 1)] = ch;
        }
    }
    let mut out = String::with_capacity((n + 1) * (w + 1) + 16);
    out.push_str(&format!("{w} {n} {}\n", tiling.monomino_count));
    for row in (1..=w).rev() {
        for col in 1..=n {
            out.push(grid[(col - 1) * w + (row - 1)] as char);
        }
        out.push('\n');
    }
    out
}

/// Parses the ASCII form back into a tiling. Connected same-letter regions
/// are decomposed into T-tetrominoes by exhaustive search, so the round
/// trip works even when the 26-letter cycle makes two touching tiles share
/// a letter.
pub fn parse_ascii(text: &str) -> Result<Tiling, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty input")?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(format!("header must be `w n gap_number`, got {header:?}"));
    }
    let w: usize = fields[0].parse().map_err(|e| format!("bad width: {e}"))?;
    let n: usize = fields[1].parse().map_err(|e| format!("bad length: {e}"))?;
    let gap: usize = fields[2].parse().map_err(|e| format!("bad gap count: {e}"))?;

    let mut grid = vec![b' '; w * n];
    for (i, line) in lines.take(w).enumerate() {
        let row = w - i;
        let bytes = line.as_bytes();
        if bytes.len() != n {
            return Err(format!("row {row} has {} cells, expected {n}", bytes.len()));
        }
        for (c, &ch) in bytes.iter().enumerate() {
            grid[c * w + (row - 1)] = ch;
        }
    }

    let mut placements = Vec::new();
    let mut seen = vec![false; w * n];
    let idx = |col: usize, row: usize| (col - 1) * w + (row - 1);
    for col in 1..=n {
        for row in 1..=w {
            let i = idx(col, row);
            if seen[i] {
                continue;
            }
            let ch = grid[i];
            if ch == b'.' {
                seen[i] = true;
                placements.push(Placement::M {
                    anchor: CellCoord::new(col as u32, row as u32),
                });
                continue;
            }
            if !ch.is_ascii_lowercase() {
                return Err(format!("unexpected character {:?} at ({col}, {row})", ch as char));
            }
            // Flood-fill the same-letter component, then carve it into Ts.
            let mut component = Vec::new();
            let mut stack = vec![(col, row)];
            seen[i] = true;
            while let Some((c, r)) = stack.pop() {
                component.push((c, r));
                let neighbors = [
                    (c.wrapping_sub(1), r),
                    (c + 1, r),
                    (c, r.wrapping_sub(1)),
                    (c, r + 1),
                ];
                for (nc, nr) in neighbors {
                    if (1..=n).contains(&nc) && (1..=w).contains(&nr) {
                        let j = idx(nc, nr);
                        if !seen[j] && grid[j] == ch {
                            seen[j] = true;
                            stack.push((nc, nr));
                        }
                    }
                }
            }
            if component.len() % 4 != 0 {
                return Err(format!(
                    "region of {:?} at ({col}, {row}) has {} cells, not a multiple of 4",
                    ch as char,
                    component.len()
                ));
            }
            component.sort();
            let mut remaining: Vec<(usize, usize)> = component;
            let mut carved = Vec::new();
            if !carve_ts(&mut remaining, &mut carved) {
                return Err(format!(
                    "region of {:?} at ({col}, {row}) does not decompose into T-tetrominoes",
                    ch as char
                ));
            }
            placements.extend(carved);
        }
    }

    let tiling = Tiling::new(w, n, placements);
    if tiling.monomino_count != gap {
        return Err(format!(
            "header claims {gap} monominoes, grid has {}",
            tiling.monomino_count
        ));
    }
    Ok(tiling)
}

/// Exact-cover style decomposition of a cell set into T placements; the
/// first remaining cell (column-major, bottom-up) must be covered by some T
/// wholly inside the set.
fn carve_ts(remaining: &mut Vec<(usize, usize)>, out: &mut Vec<Placement>) -> bool {
    if remaining.is_empty() {
        return true;
    }
    let target = remaining[0];
    for orientation in ORIENTATIONS {
        let offsets = orientation.offsets();
        for align in 0..4 {
            let (adc, adr) = offsets[align];
            let anchor = (
                target.0 as i64 - adc as i64,
                target.1 as i64 - adr as i64,
            );
            let cells: Vec<(i64, i64)> = offsets
                .iter()
                .map(|&(dc, dr)| (anchor.0 + dc as i64, anchor.1 + dr as i64))
                .collect();
            if !cells
                .iter()
                .all(|c| remaining.contains(&(c.0 as usize, c.1 as usize)))
            {
                continue;
            }
            let saved = remaining.clone();
            remaining.retain(|&(c, r)| !cells.contains(&(c as i64, r as i64)));
            out.push(Placement::T {
                orientation,
                anchor: CellCoord::new(anchor.0 as u32, anchor.1 as u32),
            });
            if carve_ts(remaining, out) {
                return true;
            }
            out.pop();
            *remaining = saved;
        }
    }
    false
}

/// SVG rendering: one unit square per cell in a `0 0 n w` viewBox, row 1 at
/// the bottom, tiles filled by placement order, monominoes dark, cell
/// borders forming the grid.
pub fn render_svg(tiling: &Tiling) -> String {
    let (w, n) = (tiling.width, tiling.length);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {n} {w}\" \
         width=\"{}\" height=\"{}\">\n",
        n * 16,
        w * 16
    ));
    let mut t_index = 0usize;
    for p in &tiling.placements {
        let fill = match p.kind() {
            TileKind::M => "#333333".to_string(),
            TileKind::T => {
                let hue = (t_index * 47) % 360;
                t_index += 1;
                format!("hsl({hue}, 65%, 62%)")
            }
        };
        for cell in p.cells() {
            let x = cell.col - 1;
            let y = w as u32 - cell.row;
            out.push_str(&format!(
                "  <rect x=\"{x}\" y=\"{y}\" width=\"1\" height=\"1\" fill=\"{fill}\" \
                 stroke=\"#00000055\" stroke-width=\"0.04\"/>\n"
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use gapnum::{FringeDigraph, Solver};

    fn witness(w: usize, n: usize) -> Tiling {
        let g = FringeDigraph::build(w).unwrap();
        Solver::new(&g).gap_number(n).unwrap().witness
    }

    #[test]
    fn ascii_header_and_shape() {
        let t = witness(3, 9);
        let text = render_ascii(&t);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "3 9 3");
        for row in &lines[1..] {
            assert_eq!(row.len(), 9);
        }
    }

    #[test]
    fn ascii_round_trips_through_the_parser() {
        for (w, n) in [(1usize, 5usize), (2, 7), (3, 9), (4, 8), (5, 6), (7, 7)] {
            let t = witness(w, n);
            let text = render_ascii(&t);
            let parsed = parse_ascii(&text).unwrap_or_else(|e| panic!("{w}x{n}: {e}"));
            assert_eq!(parsed.validate(), Ok(t.monomino_count), "{w}x{n}");
            assert_eq!(parsed.monomino_count, t.monomino_count);
            assert_eq!(parsed.width, w);
            assert_eq!(parsed.length, n);
        }
    }

    #[test]
    fn parser_rejects_malformed_grids() {
        assert!(parse_ascii("").is_err());
        assert!(parse_ascii("2 2 4\n..\n.").is_err());
        // A lone 3-cell region cannot be carved into T-tetrominoes.
        assert!(parse_ascii("2 2 1\naa\na.").is_err());
        // Header gap count must match the grid.
        assert!(parse_ascii("2 2 3\n..\n..").is_err());
    }

    #[test]
    fn svg_geometry_is_unit_cells_bottom_up() {
        let t = witness(1, 2);
        let svg = render_svg(&t);
        assert!(svg.contains("viewBox=\"0 0 2 1\""));
        // Column 1, row 1 lands at x=0, y=0 for a height-1 strip.
        assert!(svg.contains("<rect x=\"0\" y=\"0\" width=\"1\" height=\"1\""));
        assert!(svg.contains("<rect x=\"1\" y=\"0\""));
        assert_eq!(svg.matches("<rect").count(), 2);
    }
}
