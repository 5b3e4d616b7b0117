//! Graph constructions.

use std::collections::VecDeque;

use super::DirectedGraph;
use crate::error::{Error, Result};

/// Symmetric digraph of the underlying undirected graph.
pub fn rho(g: &DirectedGraph) -> DirectedGraph {
    let edges: Vec<(usize, usize)> = g.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
    DirectedGraph::from_edge_set(g.n_vertices(), edges).with_symmetric_flag(true)
}

/// Adds a vertex `n` with an edge from every old vertex.
pub fn cone(g: &DirectedGraph) -> DirectedGraph {
    join(g, &DirectedGraph::point())
}

/// Disjoint union plus every edge from `V(G)` to `V(H)`; `H`'s vertices are
/// shifted by `|V(G)|`.
pub fn join(g: &DirectedGraph, h: &DirectedGraph) -> DirectedGraph {
    let off = g.n_vertices();
    let n = off + h.n_vertices();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.extend(h.edges().map(|(u, v)| (u + off, v + off)));
    edges.extend((0..off).flat_map(|u| (off..n).map(move |v| (u, v))));
    DirectedGraph::from_edge_set(n, edges).with_symmetric_flag(false)
}

/// Cartesian product; vertex `(g, h)` has index `g * |V(H)| + h`.
pub fn cartesian(g: &DirectedGraph, h: &DirectedGraph) -> DirectedGraph {
    let m = h.n_vertices();
    let n = g.n_vertices() * m;
    let mut edges = Vec::new();
    for (a, b) in g.edges() {
        for y in 0..m {
            edges.push((a * m + y, b * m + y));
        }
    }
    for (a, b) in h.edges() {
        for x in 0..g.n_vertices() {
            edges.push((x * m + a, x * m + b));
        }
    }
    DirectedGraph::from_edge_set(n, edges).with_symmetric_flag(g.is_symmetric() && h.is_symmetric())
}

/// Every edge reversed.
pub fn opposite(g: &DirectedGraph) -> DirectedGraph {
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (v, u)).collect();
    DirectedGraph::from_edge_set(g.n_vertices(), edges).with_symmetric_flag(g.is_symmetric())
}

/// Orients every edge of a bipartite undirected graph from `first` to the
/// complementary part.
pub fn alternating(g: &DirectedGraph, first: &[usize]) -> Result<DirectedGraph> {
    let n = g.n_vertices();
    let mut side = vec![false; n];
    for &v in first {
        if v >= n {
            return Err(Error::invalid(format!("vertex {v} outside 0..{n}")));
        }
        side[v] = true;
    }
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        if side[u] == side[v] {
            return Err(Error::invalid(format!(
                "edge ({u},{v}) lies inside one part; graph is not bipartite for this partition"
            )));
        }
        if side[u] {
            edges.push((u, v));
        }
    }
    Ok(DirectedGraph::from_edge_set(n, edges).with_symmetric_flag(false))
}

/// Length of a shortest cycle of an undirected graph; `None` for forests.
pub fn girth(g: &DirectedGraph) -> Result<Option<usize>> {
    if !g.is_symmetric() {
        return Err(Error::invalid("girth is defined for undirected graphs only"));
    }
    let n = g.n_vertices();
    let mut best: Option<usize> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in g.out_neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    let len = dist[u] + dist[v] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    Ok(best)
}

/// Transitive closure without the diagonal.
pub fn reachability_preorder(g: &DirectedGraph) -> DirectedGraph {
    let n = g.n_vertices();
    let mut edges = Vec::new();
    for s in 0..n {
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in g.out_neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    edges.push((s, v));
                    stack.push(v);
                }
            }
        }
    }
    DirectedGraph::from_edge_set(n, edges)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismVerdict {
    Regular,
    NotRegular(String),
}

impl MorphismVerdict {
    pub fn is_regular(&self) -> bool {
        matches!(self, MorphismVerdict::Regular)
    }
}

/// Decides whether a vertex map is injective and sends edges to edges.
pub fn induced_chain_map_check(f: &[usize], g: &DirectedGraph, h: &DirectedGraph) -> MorphismVerdict {
    if f.len() != g.n_vertices() {
        return MorphismVerdict::NotRegular(format!(
            "map has {} entries for {} vertices",
            f.len(),
            g.n_vertices()
        ));
    }
    if let Some(v) = f.iter().position(|&x| x >= h.n_vertices()) {
        return MorphismVerdict::NotRegular(format!("vertex {v} maps outside the target"));
    }
    let mut hit = vec![usize::MAX; h.n_vertices()];
    for (v, &x) in f.iter().enumerate() {
        if hit[x] != usize::MAX {
            return MorphismVerdict::NotRegular(format!(
                "not injective: vertices {} and {v} both map to {x}",
                hit[x]
            ));
        }
        hit[x] = v;
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| !h.has_edge(f[u], f[v])) {
        return MorphismVerdict::NotRegular(format!("edge ({u},{v}) is not sent to an edge"));
    }
    MorphismVerdict::Regular
}
