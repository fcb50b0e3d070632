//! The fringe digraph: every canonical fringe reachable from the empty
//! fringe, with one edge per legal placement.
//!
//! Node 0 is the empty fringe. Discovery is breadth-first with placements
//! enumerated in the fixed orientation order, which makes node ids and edge
//! ids stable across rebuilds. Edges are stored in CSR form, grouped by
//! source node in discovery order, so the edge id doubles as the
//! tie-breaking key for witness reconstruction.

use std::collections::{HashMap, VecDeque};
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CellCoord, Fringe, Orientation, Placement, TileKind, MAX_WIDTH};
use crate::limits::Limits;

/// Compact CSR edge. `tile` is an orientation index 0..=3 for T-edges and 4
/// for the monomino edge; the anchor is fringe-relative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Edge {
    pub to: u32,
    pub tile: u8,
    pub cols: u8,
    pub anchor_col: u8,
    pub anchor_row: u8,
}

const TILE_MONOMINO: u8 = 4;

impl Edge {
    pub fn kind(&self) -> TileKind {
        if self.tile == TILE_MONOMINO {
            TileKind::M
        } else {
            TileKind::T
        }
    }

    pub fn placement(&self) -> Placement {
        let anchor = CellCoord::new(self.anchor_col as u32, self.anchor_row as u32);
        match Orientation::from_index(self.tile) {
            Some(orientation) => Placement::T {
                orientation,
                anchor,
            },
            None => Placement::M { anchor },
        }
    }
}

/// A digraph edge in its public form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FringeEdge {
    pub from: u32,
    pub to: u32,
    pub kind: TileKind,
    /// Columns flushed from the fringe when this placement is applied.
    pub cols: u32,
    /// Fringe-relative placement, kept so witness tilings can be rebuilt
    /// without re-deriving geometry.
    pub placement: Placement,
}

/// Counts reported by [`FringeDigraph::stats`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphStats {
    pub node_count: usize,
    pub t_edge_count: usize,
    pub m_edge_count: usize,
    pub max_out_degree: usize,
}

/// The complete fringe digraph of a width-`w` strip.
pub struct FringeDigraph {
    width: usize,
    keys: Vec<u64>,
    edge_start: Vec<u32>,
    edges: Vec<Edge>,
}

impl std::fmt::Debug for FringeDigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FringeDigraph")
            .field("width", &self.width)
            .field("nodes", &self.keys.len())
            .field("edges", &self.edges.len())
            .finish()
    }
}

impl FringeDigraph {
    /// Builds the digraph by exhaustive breadth-first closure of the empty
    /// fringe under `advance`.
    pub fn build(width: usize) -> Result<FringeDigraph> {
        FringeDigraph::build_with_limits(width, &Limits::default())
    }

    pub fn build_with_limits(width: usize, limits: &Limits) -> Result<FringeDigraph> {
        let empty = Fringe::empty(width)?;
        let mut keys: Vec<u64> = vec![empty.bits()];
        let mut ids: HashMap<u64, u32> = HashMap::new();
        ids.insert(empty.bits(), 0);
        let mut queue: VecDeque<u32> = VecDeque::new();
        queue.push_back(0);
        let mut edge_start: Vec<u32> = vec![0];
        let mut edges: Vec<Edge> = Vec::new();

        let mut next_mem_check: usize = 1 << 12;
        while let Some(id) = queue.pop_front() {
            let fringe = Fringe::from_bits(width, keys[id as usize])
                .expect("stored keys are canonical");
            let mut build_err = None;
            fringe.for_each_legal_placement(|p| {
                if build_err.is_some() {
                    return;
                }
                let (next, cols, _) = fringe.advance_unchecked(&p);
                let to = match ids.get(&next.bits()) {
                    Some(&to) => to,
                    None => {
                        let to = keys.len() as u32;
                        if keys.len() == u32::MAX as usize {
                            build_err = Some(Error::CapacityExceeded {
                                what: format!("fringe digraph width {width} node ids"),
                                needed_mb: u64::MAX / (1024 * 1024),
                                cap_mb: 0,
                            });
                            return;
                        }
                        keys.push(next.bits());
                        ids.insert(next.bits(), to);
                        queue.push_back(to);
                        to
                    }
                };
                let anchor = p.anchor();
                edges.push(Edge {
                    to,
                    tile: match p {
                        Placement::T { orientation, .. } => orientation.index(),
                        Placement::M { .. } => TILE_MONOMINO,
                    },
                    cols: cols as u8,
                    anchor_col: anchor.col as u8,
                    anchor_row: anchor.row as u8,
                });
            });
            if let Some(err) = build_err {
                return Err(err);
            }
            edge_start.push(edges.len() as u32);

            if keys.len() >= next_mem_check {
                // keys + id map + queue + CSR, with hash-map overhead folded
                // into a per-node constant.
                let estimate =
                    keys.len() as u64 * 48 + edges.len() as u64 * 8 + edge_start.len() as u64 * 4;
                limits.check_mem(&format!("fringe digraph for width {width}"), estimate)?;
                next_mem_check = keys.len() + (1 << 16);
            }
        }

        Ok(FringeDigraph {
            width,
            keys,
            edge_start,
            edges,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn node_count(&self) -> usize {
        self.keys.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn fringe(&self, node: u32) -> Fringe {
        Fringe::from_bits(self.width, self.keys[node as usize])
            .expect("stored keys are canonical")
    }

    pub(crate) fn out_edges(&self, node: u32) -> &[Edge] {
        let lo = self.edge_start[node as usize] as usize;
        let hi = self.edge_start[node as usize + 1] as usize;
        &self.edges[lo..hi]
    }

    pub(crate) fn edge(&self, id: u32) -> &Edge {
        &self.edges[id as usize]
    }

    /// Id of the first out-edge of `node`; out-edge ids are contiguous.
    pub(crate) fn first_edge_id(&self, node: u32) -> u32 {
        self.edge_start[node as usize]
    }

    /// Source node of an edge id, recovered from the CSR offsets.
    pub(crate) fn edge_source(&self, id: u32) -> u32 {
        debug_assert!((id as usize) < self.edges.len());
        match self.edge_start.binary_search(&id) {
            // Offsets are non-decreasing; equal runs come from nodes with no
            // out-edges (impossible here, but partition_point is exact).
            Ok(_) | Err(_) => {
                let idx = self.edge_start.partition_point(|&s| s <= id);
                (idx - 1) as u32
            }
        }
    }

    /// Public view of one edge.
    pub fn fringe_edge(&self, id: u32) -> FringeEdge {
        let e = self.edge(id);
        FringeEdge {
            from: self.edge_source(id),
            to: e.to,
            kind: e.kind(),
            cols: e.cols as u32,
            placement: e.placement(),
        }
    }

    /// All edges leaving `node`, in enumeration order, as public views.
    pub fn edges_from(&self, node: u32) -> Vec<FringeEdge> {
        let base = self.first_edge_id(node);
        (0..self.out_edges(node).len() as u32)
            .map(|i| self.fringe_edge(base + i))
            .collect()
    }

    pub fn stats(&self) -> DigraphStats {
        let m_edge_count = self.edges.iter().filter(|e| e.tile == TILE_MONOMINO).count();
        DigraphStats {
            node_count: self.node_count(),
            t_edge_count: self.edge_count() - m_edge_count,
            m_edge_count,
            max_out_degree: (0..self.node_count() as u32)
                .map(|n| self.out_edges(n).len())
                .max()
                .unwrap_or(0),
        }
    }

    /// Streams the digraph as a JSON document:
    /// `{"width": w, "nodes": [{"id", "fringe"}...], "edges": [{"from",
    /// "to", "kind", "cols", "placement"}...]}` with fringes as hex keys.
    pub fn export<W: Write>(&self, out: &mut W) -> io::Result<()> {
        write!(out, "{{\"width\":{},\"nodes\":[", self.width)?;
        for (id, key) in self.keys.iter().enumerate() {
            if id > 0 {
                out.write_all(b",")?;
            }
            write!(out, "{{\"id\":{id},\"fringe\":\"{key:x}\"}}")?;
        }
        write!(out, "],\"edges\":[")?;
        let mut first = true;
        for from in 0..self.node_count() as u32 {
            let base = self.first_edge_id(from);
            for i in 0..self.out_edges(from).len() as u32 {
                if !first {
                    out.write_all(b",")?;
                }
                first = false;
                let e = self.edge(base + i);
                let kind = match e.kind() {
                    TileKind::T => "T",
                    TileKind::M => "M",
                };
                let placement = serde_json::to_string(&e.placement())
                    .expect("placement serializes");
                write!(
                    out,
                    "{{\"from\":{from},\"to\":{},\"kind\":\"{kind}\",\"cols\":{},\"placement\":{placement}}}",
                    e.to, e.cols
                )?;
            }
        }
        out.write_all(b"]}")?;
        Ok(())
    }

    pub fn export_to_string(&self) -> String {
        let mut buf = Vec::new();
        self.export(&mut buf).expect("writing to Vec cannot fail");
        String::from_utf8(buf).expect("export is valid UTF-8")
    }

    /// Parses a document produced by [`export`] back into a digraph.
    ///
    /// [`export`]: FringeDigraph::export
    pub fn import(text: &str) -> Result<FringeDigraph> {
        let doc: DigraphDoc = serde_json::from_str(text)
            .map_err(|e| Error::InvalidDocument(e.to_string()))?;
        doc.into_digraph()
    }

    pub fn import_reader<R: io::Read>(reader: R) -> Result<FringeDigraph> {
        let doc: DigraphDoc = serde_json::from_reader(reader)
            .map_err(|e| Error::InvalidDocument(e.to_string()))?;
        doc.into_digraph()
    }
}

#[derive(Serialize, Deserialize)]
struct DigraphDoc {
    width: usize,
    nodes: Vec<NodeDoc>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    id: u32,
    fringe: String,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    from: u32,
    to: u32,
    kind: String,
    cols: u8,
    placement: Placement,
}

impl DigraphDoc {
    fn into_digraph(self) -> Result<FringeDigraph> {
        if self.width == 0 || self.width > MAX_WIDTH {
            return Err(Error::InvalidDocument(format!(
                "width {} out of range",
                self.width
            )));
        }
        let n = self.nodes.len();
        let mut keys = vec![0u64; n];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.id as usize != i {
                return Err(Error::InvalidDocument(format!(
                    "node ids must be dense and ordered; found {} at position {i}",
                    node.id
                )));
            }
            let bits = u64::from_str_radix(&node.fringe, 16)
                .map_err(|e| Error::InvalidDocument(format!("bad fringe key: {e}")))?;
            Fringe::from_bits(self.width, bits)?;
            keys[i] = bits;
        }
        if n == 0 || keys[0] != 0 {
            return Err(Error::InvalidDocument(
                "node 0 must be the empty fringe".into(),
            ));
        }
        let mut edge_start = vec![0u32; n + 1];
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut prev_from = 0u32;
        for e in &self.edges {
            if (e.from as usize) >= n || (e.to as usize) >= n {
                return Err(Error::InvalidDocument(format!(
                    "edge {}->{} references unknown node",
                    e.from, e.to
                )));
            }
            if e.from < prev_from {
                return Err(Error::InvalidDocument(
                    "edges must be grouped by source node in ascending order".into(),
                ));
            }
            prev_from = e.from;
            let anchor = e.placement.anchor();
            let tile = match (&e.kind[..], &e.placement) {
                ("T", Placement::T { orientation, .. }) => orientation.index(),
                ("M", Placement::M { .. }) => TILE_MONOMINO,
                _ => {
                    return Err(Error::InvalidDocument(format!(
                        "edge kind {:?} does not match its placement",
                        e.kind
                    )))
                }
            };
            edges.push(Edge {
                to: e.to,
                tile,
                cols: e.cols,
                anchor_col: anchor.col as u8,
                anchor_row: anchor.row as u8,
            });
            edge_start[e.from as usize + 1] += 1;
        }
        for i in 0..n {
            edge_start[i + 1] += edge_start[i];
        }
        Ok(FringeDigraph {
            width: self.width,
            keys,
            edge_start,
            edges,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width_1_is_a_single_monomino_self_loop() {
        let g = FringeDigraph::build(1).unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.edge_count(), 1);
        let e = g.fringe_edge(0);
        assert_eq!(e.from, 0);
        assert_eq!(e.to, 0);
        assert_eq!(e.kind, TileKind::M);
        assert_eq!(e.cols, 1);
        let stats = g.stats();
        assert_eq!(
            stats,
            DigraphStats {
                node_count: 1,
                t_edge_count: 0,
                m_edge_count: 1,
                max_out_degree: 1
            }
        );
    }

    #[test]
    fn every_node_has_exactly_one_monomino_edge() {
        for w in [1, 2, 3, 4, 5] {
            let g = FringeDigraph::build(w).unwrap();
            for node in 0..g.node_count() as u32 {
                let m_edges = g
                    .out_edges(node)
                    .iter()
                    .filter(|e| e.kind() == TileKind::M)
                    .count();
                assert_eq!(m_edges, 1, "width {w} node {node}");
                let degree = g.out_edges(node).len();
                assert!((1..=5).contains(&degree));
            }
        }
    }

    #[test]
    fn rebuild_is_deterministic() {
        let a = FringeDigraph::build(4).unwrap().export_to_string();
        let b = FringeDigraph::build(4).unwrap().export_to_string();
        assert_eq!(a, b);
    }

    #[test]
    fn export_width_1_has_one_node_one_edge() {
        let g = FringeDigraph::build(1).unwrap();
        let text = g.export_to_string();
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["width"], 1);
        assert_eq!(doc["nodes"].as_array().unwrap().len(), 1);
        assert_eq!(doc["edges"].as_array().unwrap().len(), 1);
        assert_eq!(doc["nodes"][0]["fringe"], "0");
    }

    #[test]
    fn export_import_round_trip() {
        let g = FringeDigraph::build(3).unwrap();
        let text = g.export_to_string();
        let h = FringeDigraph::import(&text).unwrap();
        assert_eq!(g.width(), h.width());
        assert_eq!(g.keys, h.keys);
        assert_eq!(g.edge_start, h.edge_start);
        assert_eq!(g.edges, h.edges);
        assert_eq!(text, h.export_to_string());
    }

    #[test]
    fn edge_source_inverts_csr() {
        let g = FringeDigraph::build(3).unwrap();
        for from in 0..g.node_count() as u32 {
            let base = g.first_edge_id(from);
            for i in 0..g.out_edges(from).len() as u32 {
                assert_eq!(g.edge_source(base + i), from);
            }
        }
    }

    #[test]
    fn capacity_error_is_clean() {
        let limits = Limits {
            mem_cap_mb: 0,
            relax_budget: 0,
        };
        // Width 9 exceeds a zero cap at the first memory check.
        match FringeDigraph::build_with_limits(9, &limits) {
            Err(Error::CapacityExceeded { .. }) => {}
            other => panic!("expected capacity error, got {other:?}"),
        }
    }
}
