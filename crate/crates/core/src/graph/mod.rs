//! Finite loop-free directed graphs, their path metric, and constructions.
//!
//! Undirected graphs are represented by their symmetric digraph `ρ(G)`: every
//! undirected edge becomes two opposite directed edges, and the graph carries
//! a flag recording that it came from an undirected graph.

mod families;
mod iso;
mod ops;
mod parse;

pub use families::{family, parse_family, random_digraph, random_directed_tree, s1, s2, FamilyName};
pub use iso::{canonical_form, connected_graph_classes, connected_spanning_classes, is_isomorphic, CanonicalForm, MAX_CLASS_VERTICES};
pub use ops::{
    alternating, cartesian, cone, girth, induced_chain_map_check, join, opposite,
    reachability_preorder, rho, MorphismVerdict,
};
pub use parse::{parse_graph, parse_graph_with_labels};

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DirectedGraph {
    n: usize,
    out: Vec<Vec<usize>>,
    symmetric: bool,
}

impl DirectedGraph {
    /// Builds a digraph on vertices `0..n`; rejects self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            out[u].push(v);
        }
        for (u, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("duplicate edge ({u},{})", w[0])));
            }
        }
        Ok(DirectedGraph {
            n,
            out,
            symmetric: false,
        })
    }

    /// Symmetric digraph of an undirected graph given by unordered edges.
    pub fn undirected(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let both: Vec<(usize, usize)> = edges.into_iter().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
        let mut g = Self::new(n, both)?;
        g.symmetric = true;
        Ok(g)
    }

    /// Digraph from edges that may repeat; duplicates are merged.
    pub(crate) fn from_edge_set(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); n];
        for (u, v) in edges {
            debug_assert!(u != v && u < n && v < n);
            out[u].push(v);
        }
        for list in &mut out {
            list.sort_unstable();
            list.dedup();
        }
        let mut g = DirectedGraph {
            n,
            out,
            symmetric: false,
        };
        g.symmetric = g.is_symmetric_relation();
        g
    }

    pub fn point() -> Self {
        DirectedGraph {
            n: 1,
            out: vec![Vec::new()],
            symmetric: true,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// Number of directed edges.
    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// True when the graph was produced from an undirected graph.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub(crate) fn with_symmetric_flag(mut self, flag: bool) -> Self {
        self.symmetric = flag;
        self
    }

    fn is_symmetric_relation(&self) -> bool {
        self.edges().all(|(u, v)| self.has_edge(v, u))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    /// Directed edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    /// Unordered edges `u < v` of a symmetric graph.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        self.edges().filter(|&(u, v)| u < v).collect()
    }

    /// Undirected degree of a vertex (symmetric graphs).
    pub fn degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.out.iter().filter(|l| l.binary_search(&v).is_ok()).count()
    }

    /// Weakly connected (connected for symmetric graphs).
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.n];
        for (u, v) in self.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_strongly_connected(&self) -> bool {
        let d = distance_matrix(self);
        (0..self.n).all(|u| (0..self.n).all(|v| d.get(u, v).is_finite()))
    }

    /// True when the graph has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.n];
        for (_, v) in self.edges() {
            indeg[v] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = queue.pop_front() {
            seen += 1;
            for &v in &self.out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        seen == self.n
    }

    pub fn is_transitive(&self) -> bool {
        self.edges()
            .all(|(u, v)| self.out[v].iter().all(|&w| w == u || self.has_edge(u, w)))
    }

    /// Subgraph on the same vertices keeping the listed directed edges.
    pub fn spanning_subgraph(&self, keep: impl Fn(usize, usize) -> bool) -> DirectedGraph {
        let edges: Vec<(usize, usize)> = self.edges().filter(|&(u, v)| keep(u, v)).collect();
        DirectedGraph::from_edge_set(self.n, edges)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> DirectedGraph {
        assert_eq!(perm.len(), self.n);
        let edges: Vec<(usize, usize)> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        DirectedGraph::from_edge_set(self.n, edges).with_symmetric_flag(self.symmetric)
    }

    /// Edge list in the `# directed` / `# undirected` text format.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        if self.symmetric {
            s.push_str("# undirected\n");
            for (u, v) in self.undirected_edges() {
                s.push_str(&format!("{u} {v}\n"));
            }
        } else {
            s.push_str("# directed\n");
            for (u, v) in self.edges() {
                s.push_str(&format!("{u} {v}\n"));
            }
        }
        for v in (0..self.n).filter(|&v| self.out[v].is_empty() && self.in_degree(v) == 0) {
            s.push_str(&format!("{v}\n"));
        }
        s
    }
}

impl fmt::Debug for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(usize, usize)> = self.edges().collect();
        f.debug_struct("DirectedGraph")
            .field("n", &self.n)
            .field("symmetric", &self.symmetric)
            .field("edges", &edges)
            .finish()
    }
}

/// A path-metric value: a finite hop count or unreachable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Distance {
        self.d[u * self.n + v]
    }

    pub fn finite(&self, u: usize, v: usize) -> Option<u32> {
        self.get(u, v).finite()
    }

    /// Largest finite distance between distinct vertices (0 if none).
    pub fn max_finite(&self) -> u32 {
        self.d.iter().filter_map(|d| d.finite()).max().unwrap_or(0)
    }
}

/// Breadth-first shortest directed path lengths from every vertex.
pub fn distance_matrix(g: &DirectedGraph) -> DistanceMatrix {
    let n = g.n;
    let mut d = vec![Distance::Infinite; n * n];
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        row[s] = Distance::Finite(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let Distance::Finite(du) = row[u] else { unreachable!() };
            for &v in g.out_neighbors(u) {
                if row[v] == Distance::Infinite {
                    row[v] = Distance::Finite(du + 1);
                    queue.push_back(v);
                }
            }
        }
    }
    DistanceMatrix { n, d }
}
