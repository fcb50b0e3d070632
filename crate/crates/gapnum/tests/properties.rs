//! Property tests over the fringe machinery and the digraph invariants.
//!
//! Random fringes are produced the only way valid fringes can be: by
//! walking legal placements from the empty fringe.

use proptest::prelude::*;

use gapnum::{Fringe, FringeDigraph, Placement, TileKind};

/// Applies a choice sequence as a walk from the empty fringe, checking the
/// per-step invariants, and returns the final fringe.
fn walk(width: usize, choices: &[u8]) -> Fringe {
    let mut fringe = Fringe::empty(width).unwrap();
    for &choice in choices {
        let options = fringe.legal_placements();
        assert!(!options.is_empty() && options.len() <= 5);
        // The monomino at the target square is always one of them.
        assert!(options
            .iter()
            .any(|p| matches!(p, Placement::M { anchor } if *anchor == fringe.target_cell())));
        let pick = &options[choice as usize % options.len()];
        // No placement reaches past the third frontier column or outside
        // the strip.
        for cell in pick.cells() {
            assert!((1..=3).contains(&cell.col), "cell {cell:?}");
            assert!((1..=width as u32).contains(&cell.row), "cell {cell:?}");
        }
        let before = fringe.count_tiled();
        let (next, absorbed, kind) = fringe.advance(pick).unwrap();
        // Cell conservation: old cells + tile = new cells + w per column.
        assert_eq!(
            before + pick.cell_count() as u32,
            next.count_tiled() + width as u32 * absorbed
        );
        assert!(absorbed <= 3);
        assert!(next.is_canonical());
        assert_eq!(kind, pick.kind());
        // Determinism.
        assert_eq!(fringe.advance(pick).unwrap(), (next, absorbed, kind));
        fringe = next;
    }
    fringe
}

proptest! {
    #[test]
    fn fringe_walks_preserve_invariants(
        width in 1usize..=9,
        choices in proptest::collection::vec(any::<u8>(), 0..60),
    ) {
        let fringe = walk(width, &choices);
        // The target of any canonical fringe is in the first column.
        prop_assert_eq!(fringe.target_cell().col, 1);
        prop_assert!(fringe.target_cell().row as usize <= width);
    }

    #[test]
    fn monomino_walks_reach_the_empty_fringe(
        width in 1usize..=7,
        choices in proptest::collection::vec(any::<u8>(), 0..40),
    ) {
        let mut fringe = walk(width, &choices);
        // Greedy completeness: monominoes alone always flush the frontier.
        let mut steps = 0;
        while !fringe.is_empty() {
            steps += 1;
            prop_assert!(steps <= 3 * width * width, "must terminate");
            let m = Placement::M { anchor: fringe.target_cell() };
            fringe = fringe.advance(&m).unwrap().0;
        }
    }

    #[test]
    fn closed_digraph_walks_conserve_cells(
        choices in proptest::collection::vec(any::<u8>(), 1..80),
    ) {
        // Walk F_4 from the empty fringe, then close back to it with
        // monomino edges; the covered cells must fill the absorbed columns
        // exactly: 4 tau + mu = w * c.
        let g = FringeDigraph::build(4).unwrap();
        let mut node = 0u32;
        let (mut tau, mut mu, mut cols) = (0u64, 0u64, 0u64);
        for &choice in &choices {
            let edges = g.edges_from(node);
            let e = &edges[choice as usize % edges.len()];
            match e.kind {
                TileKind::T => tau += 1,
                TileKind::M => mu += 1,
            }
            cols += e.cols as u64;
            node = e.to;
        }
        let mut steps = 0;
        while node != 0 {
            steps += 1;
            prop_assert!(steps <= 64, "monomino closure must terminate");
            let e = g
                .edges_from(node)
                .into_iter()
                .find(|e| e.kind == TileKind::M)
                .expect("every node has a monomino edge");
            mu += 1;
            cols += e.cols as u64;
            node = e.to;
        }
        prop_assert_eq!(4 * tau + mu, 4 * cols);
    }

    #[test]
    fn exports_rebuild_identically(width in 1usize..=4) {
        let g = FringeDigraph::build(width).unwrap();
        let text = g.export_to_string();
        let h = FringeDigraph::import(&text).unwrap();
        prop_assert_eq!(text, h.export_to_string());
    }
}
