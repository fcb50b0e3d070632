//! Shared graph machinery over a [`FringeDigraph`]: reverse adjacency,
//! topological levels of the zero-column subgraph, and strongly connected
//! components of the T-edge subgraph.
//!
//! Two structural facts carry the solvers:
//!
//! - Edges that absorb no column strictly add cells to a bounded fringe, so
//!   the zero-column subgraph is acyclic and admits topological levels. The
//!   layered DP relaxes within a column layer along those levels, which
//!   makes per-level pulls embarrassingly parallel.
//! - Any cycle of T-edges absorbs at least one column, so monomino-free
//!   periodic tilings exist exactly when the T-subgraph has a nontrivial
//!   strongly connected component.

use crate::digraph::FringeDigraph;
use crate::geometry::TileKind;

/// In-edges of every node, CSR over (source node, edge id).
pub(crate) struct RevAdjacency {
    pub start: Vec<u32>,
    pub from: Vec<u32>,
    pub edge: Vec<u32>,
}

impl RevAdjacency {
    pub fn in_entries(&self, node: u32) -> impl Iterator<Item = (u32, u32)> + '_ {
        let lo = self.start[node as usize] as usize;
        let hi = self.start[node as usize + 1] as usize;
        (lo..hi).map(move |i| (self.from[i], self.edge[i]))
    }
}

pub(crate) fn reverse_adjacency(g: &FringeDigraph) -> RevAdjacency {
    let n = g.node_count();
    let mut start = vec![0u32; n + 1];
    for from in 0..n as u32 {
        for e in g.out_edges(from) {
            start[e.to as usize + 1] += 1;
        }
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let total = start[n] as usize;
    let mut from = vec![0u32; total];
    let mut edge = vec![0u32; total];
    let mut cursor = start.clone();
    for src in 0..n as u32 {
        let base = g.first_edge_id(src);
        for (i, e) in g.out_edges(src).iter().enumerate() {
            let slot = cursor[e.to as usize] as usize;
            from[slot] = src;
            edge[slot] = base + i as u32;
            cursor[e.to as usize] += 1;
        }
    }
    RevAdjacency { start, from, edge }
}

/// Nodes grouped by topological level: `order[bounds[l]..bounds[l+1]]` is
/// level `l`, each level sorted by node id.
pub(crate) struct LevelGroups {
    pub order: Vec<u32>,
    pub bounds: Vec<usize>,
}

impl LevelGroups {
    pub fn level_count(&self) -> usize {
        self.bounds.len() - 1
    }

    pub fn level(&self, l: usize) -> &[u32] {
        &self.order[self.bounds[l]..self.bounds[l + 1]]
    }
}

fn group_by_level(levels: &[u32]) -> LevelGroups {
    let max_level = levels.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0usize; max_level + 2];
    for &l in levels {
        counts[l as usize + 1] += 1;
    }
    for i in 0..=max_level {
        counts[i + 1] += counts[i];
    }
    let bounds = counts.clone();
    let mut order = vec![0u32; levels.len()];
    let mut cursor = counts;
    for (node, &l) in levels.iter().enumerate() {
        order[cursor[l as usize]] = node as u32;
        cursor[l as usize] += 1;
    }
    LevelGroups { order, bounds }
}

/// Topological order of the zero-column subgraph. Panics if that subgraph
/// has a cycle, which would contradict cell conservation.
fn zero_col_topo_order(g: &FringeDigraph) -> Vec<u32> {
    let n = g.node_count();
    let mut in_deg = vec![0u32; n];
    for from in 0..n as u32 {
        for e in g.out_edges(from) {
            if e.cols == 0 {
                in_deg[e.to as usize] += 1;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut queue: std::collections::VecDeque<u32> = (0..n as u32)
        .filter(|&v| in_deg[v as usize] == 0)
        .collect();
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for e in g.out_edges(u) {
            if e.cols == 0 {
                in_deg[e.to as usize] -= 1;
                if in_deg[e.to as usize] == 0 {
                    queue.push_back(e.to);
                }
            }
        }
    }
    assert_eq!(
        order.len(),
        n,
        "zero-column subgraph must be acyclic (cells strictly accumulate)"
    );
    order
}

/// Levels for forward (source-distance) relaxation: a node's level exceeds
/// the level of every zero-column predecessor.
pub(crate) fn zero_col_levels_forward(g: &FringeDigraph) -> LevelGroups {
    let order = zero_col_topo_order(g);
    let mut level = vec![0u32; g.node_count()];
    for &u in &order {
        let lu = level[u as usize];
        for e in g.out_edges(u) {
            if e.cols == 0 {
                let lv = &mut level[e.to as usize];
                *lv = (*lv).max(lu + 1);
            }
        }
    }
    group_by_level(&level)
}

/// Levels for backward (cost-to-go) relaxation: a node's level exceeds the
/// level of every zero-column successor.
pub(crate) fn zero_col_levels_backward(g: &FringeDigraph) -> LevelGroups {
    let order = zero_col_topo_order(g);
    let mut level = vec![0u32; g.node_count()];
    for &u in order.iter().rev() {
        let mut best = 0u32;
        let mut any = false;
        for e in g.out_edges(u) {
            if e.cols == 0 {
                any = true;
                best = best.max(level[e.to as usize] + 1);
            }
        }
        if any {
            level[u as usize] = best;
        }
    }
    group_by_level(&level)
}

/// Topological order of the T-edge subgraph, or `None` when it has a cycle
/// (monomino-free periodic tilings exist).
pub(crate) fn t_topo_order(g: &FringeDigraph) -> Option<Vec<u32>> {
    let n = g.node_count();
    let mut in_deg = vec![0u32; n];
    for from in 0..n as u32 {
        for e in g.out_edges(from) {
            if e.kind() == TileKind::T {
                in_deg[e.to as usize] += 1;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut queue: std::collections::VecDeque<u32> = (0..n as u32)
        .filter(|&v| in_deg[v as usize] == 0)
        .collect();
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for e in g.out_edges(u) {
            if e.kind() == TileKind::T {
                in_deg[e.to as usize] -= 1;
                if in_deg[e.to as usize] == 0 {
                    queue.push_back(e.to);
                }
            }
        }
    }
    if order.len() == n {
        Some(order)
    } else {
        None
    }
}

/// A T-only cycle as a list of edge ids, if one exists. Used both as the
/// unbounded-run witness and to certify unbounded density.
pub(crate) fn find_t_cycle(g: &FringeDigraph) -> Option<Vec<u32>> {
    // Iterative DFS over T-edges with tri-color marking; a back edge closes
    // a cycle in the implicit stack.
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let n = g.node_count();
    let mut color = vec![WHITE; n];
    // (node, next out-edge offset), plus the edge id that entered the node.
    let mut stack: Vec<(u32, u32, u32)> = Vec::new();
    const NO_EDGE: u32 = u32::MAX;
    for root in 0..n as u32 {
        if color[root as usize] != WHITE {
            continue;
        }
        color[root as usize] = GRAY;
        stack.push((root, 0, NO_EDGE));
        while let Some(&(u, next, _)) = stack.last() {
            let out = g.out_edges(u);
            if next as usize >= out.len() {
                color[u as usize] = BLACK;
                stack.pop();
                continue;
            }
            stack.last_mut().expect("nonempty").1 += 1;
            let e = &out[next as usize];
            if e.kind() != TileKind::T {
                continue;
            }
            let edge_id = g.first_edge_id(u) + next;
            match color[e.to as usize] {
                WHITE => {
                    color[e.to as usize] = GRAY;
                    stack.push((e.to, 0, edge_id));
                }
                GRAY => {
                    // Found a cycle: e.to is on the stack; collect the entry
                    // edges from its stack position down to u, then this one.
                    let pos = stack
                        .iter()
                        .position(|&(node, _, _)| node == e.to)
                        .expect("gray node is on the stack");
                    let mut cycle: Vec<u32> = stack[pos + 1..]
                        .iter()
                        .map(|&(_, _, entered)| entered)
                        .collect();
                    cycle.push(edge_id);
                    return Some(cycle);
                }
                _ => {}
            }
        }
    }
    None
}

/// Strongly connected components of the T-edge subgraph (iterative Tarjan).
/// `comp_of[v]` is the component id; components are numbered in reverse
/// topological order of the condensation.
pub(crate) struct TSccs {
    pub comp_of: Vec<u32>,
    pub comp_count: usize,
    /// Components that can host a T-only cycle: size >= 2 or a T self-loop.
    pub cyclic_comps: Vec<u32>,
}

pub(crate) fn t_sccs(g: &FringeDigraph) -> TSccs {
    let n = g.node_count();
    const UNSET: u32 = u32::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut comp_of = vec![UNSET; n];
    let mut tarjan_stack: Vec<u32> = Vec::new();
    let mut next_index = 0u32;
    let mut comp_count = 0u32;
    let mut comp_sizes: Vec<u32> = Vec::new();

    // DFS work stack of (node, next out-edge offset).
    let mut work: Vec<(u32, u32)> = Vec::new();
    for root in 0..n as u32 {
        if index[root as usize] != UNSET {
            continue;
        }
        work.push((root, 0));
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        tarjan_stack.push(root);
        on_stack[root as usize] = true;
        while let Some(&(u, next)) = work.last() {
            let out = g.out_edges(u);
            if next as usize >= out.len() {
                work.pop();
                if let Some(&(parent, _)) = work.last() {
                    low[parent as usize] = low[parent as usize].min(low[u as usize]);
                }
                if low[u as usize] == index[u as usize] {
                    let mut size = 0u32;
                    loop {
                        let v = tarjan_stack.pop().expect("scc stack underflow");
                        on_stack[v as usize] = false;
                        comp_of[v as usize] = comp_count;
                        size += 1;
                        if v == u {
                            break;
                        }
                    }
                    comp_sizes.push(size);
                    comp_count += 1;
                }
                continue;
            }
            work.last_mut().expect("nonempty").1 += 1;
            let e = &out[next as usize];
            if e.kind() != TileKind::T {
                continue;
            }
            let v = e.to;
            if index[v as usize] == UNSET {
                index[v as usize] = next_index;
                low[v as usize] = next_index;
                next_index += 1;
                tarjan_stack.push(v);
                on_stack[v as usize] = true;
                work.push((v, 0));
            } else if on_stack[v as usize] {
                low[u as usize] = low[u as usize].min(index[v as usize]);
            }
        }
    }

    let mut cyclic = vec![false; comp_count as usize];
    for (c, &size) in comp_sizes.iter().enumerate() {
        if size >= 2 {
            cyclic[c] = true;
        }
    }
    for u in 0..n as u32 {
        for e in g.out_edges(u) {
            if e.kind() == TileKind::T && e.to == u {
                cyclic[comp_of[u as usize] as usize] = true;
            }
        }
    }
    TSccs {
        comp_of,
        comp_count: comp_count as usize,
        cyclic_comps: (0..comp_count).filter(|&c| cyclic[c as usize]).collect(),
    }
}
