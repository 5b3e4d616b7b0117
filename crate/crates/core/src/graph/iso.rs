//! Canonical forms for small digraphs.
//!
//! Vertices are first split by iterated colour refinement (degree, then the
//! multiset of neighbour colours), and the canonical form is the minimal
//! adjacency code over all labellings that list colour classes in order and
//! permute freely inside each class. Exhaustive, so only meant for the
//! handful-of-vertices graphs the sweeps use.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::DirectedGraph;
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`connected_graph_classes`].
pub const MAX_CLASS_VERTICES: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    rows: Vec<u64>,
    order: Vec<usize>,
}

impl CanonicalForm {
    /// The graph relabelled into canonical position order.
    pub fn graph(&self, symmetric: bool) -> DirectedGraph {
        let edges: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.rows[i] >> j & 1 == 1)
            .collect();
        DirectedGraph::from_edge_set(self.n, edges).with_symmetric_flag(symmetric)
    }

    /// `order[p]` is the original vertex at canonical position `p`.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Identifies the isomorphism class; the labelling is ignored.
    pub fn key(&self) -> (usize, &[u64]) {
        (self.n, &self.rows)
    }
}

fn refine(g: &DirectedGraph) -> Vec<usize> {
    let n = g.n_vertices();
    let mut ins: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        ins[v].push(u);
    }
    let mut colors: Vec<usize> = vec![0; n];
    let mut count = 1;
    loop {
        let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut o: Vec<usize> = g.out_neighbors(v).iter().map(|&w| colors[w]).collect();
                let mut i: Vec<usize> = ins[v].iter().map(|&w| colors[w]).collect();
                o.sort_unstable();
                i.sort_unstable();
                (colors[v], o, i)
            })
            .collect();
        let distinct: Vec<&(usize, Vec<usize>, Vec<usize>)> =
            keys.iter().collect::<BTreeSet<_>>().into_iter().collect();
        let new: Vec<usize> = keys
            .iter()
            .map(|k| distinct.binary_search(&k).expect("key present"))
            .collect();
        let new_count = distinct.len();
        colors = new;
        if new_count == count {
            return colors;
        }
        count = new_count;
    }
}

pub fn canonical_form(g: &DirectedGraph) -> CanonicalForm {
    let n = g.n_vertices();
    assert!(n <= 64, "canonical forms are limited to 64 vertices");
    let colors = refine(g);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let mut cells = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || colors[order[i]] != colors[order[start]] {
            cells.push((start, i));
            start = i;
        }
    }
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    search(g, &cells, 0, &mut order, &mut best);
    let (rows, order) = best.unwrap_or_default();
    CanonicalForm { n, rows, order }
}

fn code(g: &DirectedGraph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut pos = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    order
        .iter()
        .map(|&v| g.out_neighbors(v).iter().fold(0u64, |acc, &w| acc | 1 << pos[w]))
        .collect()
}

fn search(
    g: &DirectedGraph,
    cells: &[(usize, usize)],
    ci: usize,
    order: &mut Vec<usize>,
    best: &mut Option<(Vec<u64>, Vec<usize>)>,
) {
    if ci == cells.len() {
        let c = code(g, order);
        if best.as_ref().is_none_or(|(b, _)| c < *b) {
            *best = Some((c, order.clone()));
        }
        return;
    }
    let (s, e) = cells[ci];
    permute(g, cells, ci, s, e, order, best);
}

fn permute(
    g: &DirectedGraph,
    cells: &[(usize, usize)],
    ci: usize,
    i: usize,
    e: usize,
    order: &mut Vec<usize>,
    best: &mut Option<(Vec<u64>, Vec<usize>)>,
) {
    if i + 1 >= e {
        search(g, cells, ci + 1, order, best);
        return;
    }
    for j in i..e {
        order.swap(i, j);
        permute(g, cells, ci, i + 1, e, order, best);
        order.swap(i, j);
    }
}

pub fn is_isomorphic(a: &DirectedGraph, b: &DirectedGraph) -> bool {
    a.n_vertices() == b.n_vertices()
        && a.edge_count() == b.edge_count()
        && canonical_form(a).key() == canonical_form(b).key()
}

/// One representative per isomorphism class of connected undirected graphs on
/// `n` vertices, sorted by canonical form.
pub fn connected_graph_classes(n: usize) -> Result<Vec<DirectedGraph>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    connected_spanning_classes(&DirectedGraph::undirected(n, pairs)?)
}

/// Isomorphism classes of connected spanning subgraphs of an undirected
/// graph, sorted by canonical form.
pub fn connected_spanning_classes(g: &DirectedGraph) -> Result<Vec<DirectedGraph>> {
    let n = g.n_vertices();
    if n > MAX_CLASS_VERTICES {
        return Err(Error::cap(format!(
            "graph class enumeration is capped at {MAX_CLASS_VERTICES} vertices"
        )));
    }
    if !g.is_symmetric() {
        return Err(Error::invalid("spanning subgraph classes need an undirected graph"));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let pairs = g.undirected_edges();
    let masks = 1u64 << pairs.len();
    let forms: BTreeSet<(usize, Vec<u64>)> = (0..masks)
        .into_par_iter()
        .filter(|m| m.count_ones() as usize + 1 >= n)
        .filter_map(|m| {
            let edges = pairs.iter().enumerate().filter(|(b, _)| m >> b & 1 == 1).map(|(_, &e)| e);
            let h = DirectedGraph::undirected(n, edges).expect("valid edges");
            h.is_connected().then(|| {
                let c = canonical_form(&h);
                (c.n, c.rows)
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(forms
        .into_iter()
        .map(|(n, rows)| CanonicalForm { n, rows, order: Vec::new() }.graph(true))
        .collect())
}
