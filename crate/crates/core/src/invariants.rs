//! Magnitude polynomials, Euler characteristic identities, diagonality
//! classifiers, the girth bound on subdiagonals, subgraph networks and the
//! maximal-girth count `γ_n^s`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::{BigradedComplex, ChainKind};
use crate::error::{Error, Result};
use crate::graph::{
    canonical_form, connected_graph_classes, connected_spanning_classes, distance_matrix, girth, DirectedGraph,
};
use crate::homology::{eulerian_homology, magnitude_homology, HomologyTable};
use crate::nerve::injective_words;
use crate::scalar::Ring;

/// Integer polynomial in `q`, nonzero coefficients only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    pub coefficients: BTreeMap<u32, i128>,
}

impl Polynomial {
    fn from_dense(c: Vec<i128>) -> Self {
        Polynomial {
            coefficients: c.into_iter().enumerate().filter(|(_, x)| *x != 0).map(|(d, x)| (d as u32, x)).collect(),
        }
    }

    pub fn coefficient(&self, d: u32) -> i128 {
        self.coefficients.get(&d).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coefficients.keys().next_back().copied()
    }

    pub fn eval(&self, q: i128) -> i128 {
        self.coefficients.iter().map(|(&d, &c)| c * q.pow(d)).sum()
    }

    /// `{degree: coefficient}` with string keys.
    pub fn to_json(&self) -> Value {
        let m: serde_json::Map<String, Value> =
            self.coefficients.iter().map(|(d, c)| (d.to_string(), json!(c))).collect();
        Value::Object(m)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return f.write_str("0");
        }
        for (i, (&d, &c)) in self.coefficients.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (d, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("q")?,
                (1, _) => write!(f, "{a}q")?,
                (_, 1) => write!(f, "q^{d}")?,
                _ => write!(f, "{a}q^{d}")?,
            }
        }
        Ok(())
    }
}

/// Magnitude power series up to `q^cap`, by a signed count of trails
/// ending at each vertex: `w_l(v) = -Σ_{u ≠ v} w_{l - d(u,v)}(u)`.
pub fn magnitude_series(g: &DirectedGraph, cap: u32) -> Result<Polynomial> {
    let dist = distance_matrix(g);
    let n = g.n_vertices();
    let cap = cap as usize;
    let mut w = vec![vec![0i128; n]; cap + 1];
    w[0] = vec![1; n];
    for l in 1..=cap {
        for v in 0..n {
            let mut acc: i128 = 0;
            for u in (0..n).filter(|&u| u != v) {
                if let Some(d) = dist.finite(u, v).map(|d| d as usize).filter(|&d| d <= l) {
                    acc = acc
                        .checked_sub(w[l - d][u])
                        .ok_or_else(|| Error::cap("magnitude coefficient overflows i128"))?;
                }
            }
            w[l][v] = acc;
        }
    }
    Ok(Polynomial::from_dense(w.iter().map(|row| row.iter().sum()).collect()))
}

fn alternating_counts(c: &BigradedComplex) -> Polynomial {
    let mut coeffs: BTreeMap<u32, i128> = BTreeMap::new();
    for (k, l) in c.bidegrees() {
        let r = c.rank(k, l) as i128;
        *coeffs.entry(l).or_default() += if k % 2 == 0 { r } else { -r };
    }
    coeffs.retain(|_, c| *c != 0);
    Polynomial { coefficients: coeffs }
}

/// The same series from the enumerated magnitude chain bases.
pub fn magnitude_series_by_enumeration(g: &DirectedGraph, cap: u32) -> Result<Polynomial> {
    Ok(alternating_counts(&BigradedComplex::build(g, ChainKind::Magnitude, Some(cap))?))
}

/// Regular magnitude: alternating counts of eulerian trails by length.
pub fn regular_magnitude(g: &DirectedGraph) -> Result<Polynomial> {
    Ok(alternating_counts(&BigradedComplex::build(g, ChainKind::Eulerian, None)?))
}

/// `Σ_l q^l χ(EMH_{*,l})` from a homology table.
pub fn line_euler_sum(table: &HomologyTable, q: i128) -> i128 {
    table
        .nonzero()
        .map(|((k, l), g)| {
            let r = g.free_rank as i128;
            let chi = if k % 2 == 0 { r } else { -r };
            chi * q.pow(l)
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decategorification {
    /// `Σ_l (-1)^l χ(EMH_{*,l})`.
    pub emh_alternating: i128,
    /// `Σ_l χ(EMH_{*,l})`, the Euler characteristic of the whole first page.
    pub emh_total: i128,
    pub regular_magnitude_at_minus_one: i128,
    pub regular_magnitude_at_one: i128,
    pub injective_words_euler: i64,
}

/// Evaluates both sides of the decategorification identities.
pub fn decategorification(g: &DirectedGraph) -> Result<Decategorification> {
    let table = eulerian_homology(g, Ring::Rationals, "G")?;
    let p = regular_magnitude(g)?;
    Ok(Decategorification {
        emh_alternating: line_euler_sum(&table, -1),
        emh_total: line_euler_sum(&table, 1),
        regular_magnitude_at_minus_one: p.eval(-1),
        regular_magnitude_at_one: p.eval(1),
        injective_words_euler: injective_words(g).euler_characteristic(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalityVerdict {
    pub regularly_diagonal: bool,
    /// Bidegrees `(k, l)` with `k != l` and nonzero EMH.
    pub off_diagonal: Vec<(usize, u32)>,
    /// Ordinary MH diagonality up to `l_max`, when requested (truncated).
    pub diagonal_up_to_lmax: Option<bool>,
    pub l_max: Option<u32>,
}

/// Integral EMH decides regular diagonality exactly; MH is only checked up to `l_max`.
pub fn classify_diagonality(g: &DirectedGraph, l_max: Option<u32>) -> Result<DiagonalityVerdict> {
    let emh = eulerian_homology(g, Ring::Integers, "G")?;
    let off_diagonal = emh.nonzero().map(|(b, _)| b).filter(|&(k, l)| k as u32 != l).collect::<Vec<_>>();
    let diagonal_up_to_lmax = match l_max {
        Some(l) => Some(magnitude_homology(g, ChainKind::Magnitude, Ring::Integers, Some(l), "G")?.is_diagonal()),
        None => None,
    };
    Ok(DiagonalityVerdict {
        regularly_diagonal: off_diagonal.is_empty(),
        off_diagonal,
        diagonal_up_to_lmax,
        l_max,
    })
}

fn require_connected_undirected(g: &DirectedGraph) -> Result<()> {
    if !g.is_symmetric() {
        return Err(Error::invalid("expected an undirected graph"));
    }
    if !g.is_connected() {
        return Err(Error::invalid("expected a connected graph"));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompleteVerdict {
    pub by_homology: bool,
    pub by_edges: bool,
}

impl CompleteVerdict {
    pub fn agrees(&self) -> bool {
        self.by_homology == self.by_edges
    }
}

/// Regular diagonality as a completeness test, next to the edge count.
pub fn complete_graph_detector(g: &DirectedGraph) -> Result<CompleteVerdict> {
    require_connected_undirected(g)?;
    let n = g.n_vertices();
    Ok(CompleteVerdict {
        by_homology: classify_diagonality(g, None)?.regularly_diagonal,
        by_edges: g.undirected_edges().len() == n * (n - 1) / 2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdiagonalReport {
    pub girth: usize,
    /// `⌈(γ-1)²/2⌉ - (γ-1)`.
    pub bound: i64,
    /// Nonzero EMH entry with the largest `l - k`.
    pub witness: Option<(usize, u32)>,
    pub holds: bool,
}

pub fn subdiagonal_index(girth: usize) -> i64 {
    let g = girth as i64 - 1;
    (g * g + 1) / 2 - g
}

/// Checks that EMH reaches at least the subdiagonal predicted by the girth.
pub fn subdiagonal_bound(g: &DirectedGraph) -> Result<SubdiagonalReport> {
    let gamma = girth(g)?.ok_or_else(|| Error::invalid("graph is a forest"))?;
    let bound = subdiagonal_index(gamma);
    let emh = eulerian_homology(g, Ring::Integers, "G")?;
    let witness = emh.nonzero().map(|(b, _)| b).max_by_key(|&(k, l)| (l as i64 - k as i64, l));
    let holds = witness.is_some_and(|(k, l)| l as i64 - k as i64 >= bound);
    Ok(SubdiagonalReport {
        girth: gamma,
        bound,
        witness,
        holds,
    })
}

fn degree_sequence(g: &DirectedGraph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.n_vertices()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

/// Two isomorphism classes are adjacent when some identification of their
/// vertex sets changes no degree by more than one. Pairing sorted degree
/// sequences minimizes the largest change, so it decides this.
pub fn network_adjacent(a: &DirectedGraph, b: &DirectedGraph) -> bool {
    a.n_vertices() == b.n_vertices()
        && degree_sequence(a).iter().zip(degree_sequence(b)).all(|(&x, y)| x.abs_diff(y) <= 1)
}

#[derive(Clone, Debug)]
pub struct SubgraphNetwork {
    /// One representative per class of connected spanning subgraphs.
    pub nodes: Vec<DirectedGraph>,
    pub adjacency: Vec<Vec<usize>>,
}

impl SubgraphNetwork {
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn bfs(&self, s: usize) -> Vec<Option<usize>> {
        let mut d = vec![None; self.nodes.len()];
        d[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &self.adjacency[u] {
                if d[v].is_none() {
                    d[v] = Some(d[u].expect("visited") + 1);
                    q.push_back(v);
                }
            }
        }
        d
    }

    pub fn distance(&self, i: usize, j: usize) -> Option<usize> {
        self.bfs(i)[j]
    }

    pub fn is_connected(&self) -> bool {
        self.nodes.is_empty() || self.bfs(0).iter().all(Option::is_some)
    }

    /// `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        (0..self.nodes.len())
            .map(|s| self.bfs(s).into_iter().collect::<Option<Vec<_>>>().map(|d| d.into_iter().max().unwrap_or(0)))
            .collect::<Option<Vec<_>>>()
            .map(|d| d.into_iter().max().unwrap_or(0))
    }

    /// Node isomorphic to `h`.
    pub fn find(&self, h: &DirectedGraph) -> Option<usize> {
        let key = canonical_form(h);
        self.nodes.iter().position(|n| canonical_form(n).key() == key.key())
    }

    /// One row per node: index, edge count, sorted degree sequence, edge list, neighbours.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("node,edges,degrees,edge_list,neighbours\n");
        for (i, g) in self.nodes.iter().enumerate() {
            let degrees: Vec<String> = degree_sequence(g).iter().rev().map(usize::to_string).collect();
            let edges: Vec<String> = g.undirected_edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
            let nb: Vec<String> = self.adjacency[i].iter().map(usize::to_string).collect();
            s.push_str(&format!("{i},{},{},{},{}\n", edges.len(), degrees.join(" "), edges.join(" "), nb.join(" ")));
        }
        s
    }
}

/// The subgraph network of a connected undirected graph on at most seven vertices.
pub fn subgraph_network(g: &DirectedGraph) -> Result<SubgraphNetwork> {
    require_connected_undirected(g)?;
    let nodes = connected_spanning_classes(g)?;
    let adjacency = (0..nodes.len())
        .map(|i| (0..nodes.len()).filter(|&j| j != i && network_adjacent(&nodes[i], &nodes[j])).collect())
        .collect();
    Ok(SubgraphNetwork { nodes, adjacency })
}

/// Distance between two connected graphs in the subgraph network of `K_n`.
pub fn delta_distance(g: &DirectedGraph, h: &DirectedGraph) -> Result<usize> {
    let n = g.n_vertices();
    if h.n_vertices() != n {
        return Err(Error::invalid("graphs have different vertex counts"));
    }
    require_connected_undirected(g)?;
    require_connected_undirected(h)?;
    let classes = connected_graph_classes(n)?;
    let network = SubgraphNetwork {
        adjacency: (0..classes.len())
            .map(|i| (0..classes.len()).filter(|&j| j != i && network_adjacent(&classes[i], &classes[j])).collect())
            .collect(),
        nodes: classes,
    };
    let (a, b) = (network.find(g), network.find(h));
    let (Some(a), Some(b)) = (a, b) else {
        return Err(Error::invalid("graph not found among connected classes"));
    };
    network.distance(a, b).ok_or_else(|| Error::invalid("network is disconnected"))
}

/// Vertex cap for [`gamma`].
pub const MAX_GAMMA_VERTICES: usize = 8;

/// Largest girth of a connected spanning subgraph of `K_n` with
/// `C(n,2) - s` edges.
pub fn gamma(n: usize, s: usize) -> Result<usize> {
    if n > MAX_GAMMA_VERTICES {
        return Err(Error::cap(format!("gamma is capped at {MAX_GAMMA_VERTICES} vertices")));
    }
    gamma_search(n, s)
}

/// [`gamma`] without the vertex cap. Only fast when the answer is large.
pub fn gamma_search(n: usize, s: usize) -> Result<usize> {
    let total = n * n.saturating_sub(1) / 2;
    if n < 3 || s + n > total {
        return Err(Error::invalid(format!(
            "need n >= 3 and s <= C(n,2) - n; got n = {n}, s = {s}"
        )));
    }
    let m = total - s;
    for target in (3..=n).rev() {
        if girth_at_least_exists(n, m, target) {
            return Ok(target);
        }
    }
    unreachable!("K_n minus edges keeps a triangle or a longer cycle when m >= n")
}

fn components(g: &DirectedGraph) -> usize {
    let n = g.n_vertices();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in g.out_neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    count
}

/// Is there a connected graph on `n` vertices, `m` edges, all cycles of
/// length at least `target`? Layered search over isomorphism classes.
fn girth_at_least_exists(n: usize, m: usize, target: usize) -> bool {
    let mut layer: BTreeSet<(usize, Vec<u64>)> = BTreeSet::new();
    let empty = DirectedGraph::new(n, []).expect("valid").with_symmetric_flag(true);
    let c = canonical_form(&empty);
    layer.insert((c.key().0, c.key().1.to_vec()));
    for e in 0..m {
        let remaining = m - e - 1;
        let graphs: Vec<DirectedGraph> = layer.iter().map(|(_, rows)| from_rows(n, rows)).collect();
        layer = graphs
            .par_iter()
            .flat_map_iter(|h| {
                let dist = distance_matrix(h);
                let mut out = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if h.has_edge(u, v) {
                            continue;
                        }
                        // the new edge closes a cycle of length d(u,v) + 1
                        if dist.finite(u, v).is_some_and(|d| (d as usize) + 1 < target) {
                            continue;
                        }
                        let mut edges = h.undirected_edges();
                        edges.push((u, v));
                        let next = DirectedGraph::undirected(n, edges).expect("valid");
                        if components(&next) - 1 > remaining {
                            continue;
                        }
                        let c = canonical_form(&next);
                        out.push((c.key().0, c.key().1.to_vec()));
                    }
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        if layer.is_empty() {
            return false;
        }
    }
    layer.iter().any(|(_, rows)| components(&from_rows(n, rows)) == 1)
}

fn from_rows(n: usize, rows: &[u64]) -> DirectedGraph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| rows[i] >> j & 1 == 1).collect();
    DirectedGraph::undirected(n, edges).expect("valid")
}

/// One row of a sweep over connected graph classes.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub girth: Option<usize>,
    pub complete: bool,
    pub regularly_diagonal: bool,
    pub off_diagonal: Vec<(usize, u32)>,
}

/// Regular diagonality of every connected graph class on `n` vertices.
pub fn diagonality_sweep(n: usize) -> Result<Vec<SweepRow>> {
    let classes = connected_graph_classes(n)?;
    classes
        .par_iter()
        .map(|g| {
            let v = classify_diagonality(g, None)?;
            let edges = g.undirected_edges();
            Ok(SweepRow {
                vertices: n,
                complete: edges.len() == n * (n - 1) / 2,
                girth: girth(g)?,
                regularly_diagonal: v.regularly_diagonal,
                off_diagonal: v.off_diagonal,
                edges,
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("vertices,edges,girth,complete,regularly_diagonal,first_off_diagonal,edge_list\n");
    for r in rows {
        let girth = r.girth.map_or_else(|| "inf".to_string(), |g| g.to_string());
        let first = r.off_diagonal.first().map_or_else(String::new, |(k, l)| format!("({k};{l})"));
        let edges: Vec<String> = r.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.vertices,
            r.edges.len(),
            girth,
            r.complete,
            r.regularly_diagonal,
            first,
            edges.join(" ")
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::trail_length;
    use crate::graph::{alternating, family, s1, FamilyName};
    use proptest::prelude::*;

    fn fam(f: FamilyName, n: usize) -> DirectedGraph {
        family(f, n).unwrap()
    }

    /// Signed count of all eulerian tuples, by brute force over permutations of subsets.
    fn regular_magnitude_oracle(g: &DirectedGraph) -> BTreeMap<u32, i128> {
        let dist = distance_matrix(g);
        let n = g.n_vertices();
        let mut out: BTreeMap<u32, i128> = BTreeMap::new();
        fn rec(t: &mut Vec<usize>, n: usize, dist: &crate::DistanceMatrix, out: &mut BTreeMap<u32, i128>) {
            if let Some(l) = trail_length(t, dist) {
                *out.entry(l).or_default() += if t.len() % 2 == 1 { 1 } else { -1 };
            } else {
                return;
            }
            for v in 0..n {
                if !t.contains(&v) {
                    t.push(v);
                    rec(t, n, dist, out);
                    t.pop();
                }
            }
        }
        for v in 0..n {
            rec(&mut vec![v], n, &dist, &mut out);
        }
        out.retain(|_, c| *c != 0);
        out
    }

    #[test]
    fn magnitude_of_complete_graphs() {
        for n in 2..=4usize {
            let p = magnitude_series(&fam(FamilyName::Complete, n), 4).unwrap();
            for l in 0..=4 {
                assert_eq!(p.coefficient(l), n as i128 * (-(n as i128 - 1)).pow(l));
            }
        }
        assert_eq!(magnitude_series(&DirectedGraph::point(), 5).unwrap().to_string(), "1");
        let c4 = fam(FamilyName::Cycle, 4);
        let p = magnitude_series(&c4, 5).unwrap();
        assert_eq!(p.coefficient(0), 4);
        assert_eq!(p.coefficient(1), -8);
    }

    #[test]
    fn regular_magnitude_examples() {
        assert_eq!(regular_magnitude(&DirectedGraph::point()).unwrap().to_string(), "1");
        assert_eq!(regular_magnitude(&fam(FamilyName::Linear, 2)).unwrap().to_string(), "2 - 2q");
        let k3 = regular_magnitude(&fam(FamilyName::Complete, 3)).unwrap();
        assert_eq!(k3.to_string(), "3 - 6q + 6q^2");
        assert_eq!(k3.to_json(), json!({"0": 3, "1": -6, "2": 6}));
    }

    #[test]
    fn decategorification_identities() {
        for g in [
            fam(FamilyName::Complete, 3),
            fam(FamilyName::Cycle, 4),
            fam(FamilyName::DirLinear, 4),
            fam(FamilyName::Tournament, 3),
            s1(),
        ] {
            let d = decategorification(&g).unwrap();
            assert_eq!(d.emh_alternating, d.regular_magnitude_at_minus_one);
            // the whole first page has the Euler characteristic of Inj(G)
            assert_eq!(d.emh_total, d.regular_magnitude_at_one);
            assert_eq!(d.regular_magnitude_at_one, d.injective_words_euler as i128);
        }
        // at q = -1 the complex of injective words is not recovered
        let k3 = decategorification(&fam(FamilyName::Complete, 3)).unwrap();
        assert_eq!((k3.regular_magnitude_at_minus_one, k3.injective_words_euler), (15, 3));
    }

    #[test]
    fn connected_undirected_regular_magnitude_is_not_one() {
        for n in 2..=5 {
            for g in connected_graph_classes(n).unwrap() {
                let d = decategorification(&g).unwrap();
                assert_ne!(d.regular_magnitude_at_one, 1);
            }
        }
        // K4 with a pendant vertex evaluates to 1 at q = -1
        let g = DirectedGraph::undirected(5, [(0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let d = decategorification(&g).unwrap();
        assert_eq!((d.regular_magnitude_at_minus_one, d.regular_magnitude_at_one), (1, 45));
    }

    #[test]
    fn diagonality_examples() {
        assert!(classify_diagonality(&fam(FamilyName::Complete, 5), None).unwrap().regularly_diagonal);
        let k23 = crate::graph::parse_family("bipartite:2,3").unwrap();
        let alt = alternating(&k23, &[0, 1]).unwrap();
        assert!(classify_diagonality(&alt, None).unwrap().regularly_diagonal);
        let i4 = classify_diagonality(&fam(FamilyName::Linear, 4), Some(3)).unwrap();
        assert!(!i4.regularly_diagonal);
        assert!(i4.off_diagonal.contains(&(3, 6)));
        assert_eq!(i4.diagonal_up_to_lmax, Some(true));
    }

    #[test]
    fn complete_detection_up_to_five_vertices() {
        for n in 1..=5 {
            for g in connected_graph_classes(n).unwrap() {
                let v = complete_graph_detector(&g).unwrap();
                assert!(v.agrees(), "{:?}", g.to_edge_list());
                if v.by_homology {
                    assert!(girth(&g).unwrap().is_none_or(|x| x == 3 || x == 4));
                }
            }
        }
        assert!(complete_graph_detector(&DirectedGraph::undirected(3, [(0, 1)]).unwrap()).is_err());
    }

    #[test]
    fn subdiagonal_examples() {
        let c5 = subdiagonal_bound(&fam(FamilyName::Cycle, 5)).unwrap();
        assert_eq!((c5.girth, c5.bound, c5.witness), (5, 4, Some((4, 8))));
        assert!(c5.holds);
        let c4 = subdiagonal_bound(&fam(FamilyName::Cycle, 4)).unwrap();
        assert_eq!((c4.bound, c4.witness), (2, Some((3, 5))));
        assert!(subdiagonal_bound(&fam(FamilyName::Linear, 4)).is_err());
        assert_eq!(subdiagonal_index(3), 0);
    }

    #[test]
    fn diamond_off_diagonal_entries() {
        // K4 minus the edge 2-3
        let d = DirectedGraph::undirected(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let emh = eulerian_homology(&d, Ring::Integers, "D").unwrap();
        assert_eq!(emh.rank(2, 3), 0);
        let off: Vec<_> = emh.nonzero().map(|(b, _)| b).filter(|&(k, l)| k as u32 != l).collect();
        assert_eq!(off, vec![(3, 4)]);
    }

    #[test]
    fn network_of_k4() {
        let net = subgraph_network(&fam(FamilyName::Complete, 4)).unwrap();
        assert_eq!(net.nodes.len(), 6);
        assert_eq!(net.edge_count(), 11);
        assert!(net.is_connected());
        assert_eq!(net.diameter(), Some(2));
        let star = fam(FamilyName::Star, 3);
        let c4 = fam(FamilyName::Cycle, 4);
        assert_eq!(delta_distance(&star, &c4).unwrap(), 1);
        assert_eq!(delta_distance(&c4, &c4).unwrap(), 0);
        assert!(delta_distance(&c4, &fam(FamilyName::Cycle, 5)).is_err());
    }

    #[test]
    fn networks_are_connected() {
        for n in 2..=5 {
            for g in connected_graph_classes(n).unwrap() {
                assert!(subgraph_network(&g).unwrap().is_connected());
            }
        }
    }

    #[test]
    fn gamma_values() {
        for n in 3..=7 {
            assert_eq!(gamma(n, n * (n - 1) / 2 - n).unwrap(), n);
        }
        assert_eq!(gamma(4, 2).unwrap(), 4);
        assert_eq!(gamma(5, 0).unwrap(), 3);
        // 5 vertices, 6 edges: two cycles sharing a path; best is two 4-cycles
        assert_eq!(gamma(5, 4).unwrap(), 4);
        assert!(gamma(4, 3).is_err());
        assert!(gamma(9, 0).is_err());
    }

    #[test]
    fn sweep_rows() {
        let rows = diagonality_sweep(4).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows.iter().filter(|r| r.regularly_diagonal).count(), 1);
        let csv = sweep_csv(&rows);
        assert_eq!(csv.lines().count(), 7);
    }

    fn brute_adjacent(a: &DirectedGraph, b: &DirectedGraph) -> bool {
        fn perms(k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            perms(k - 1)
                .into_iter()
                .flat_map(|p| {
                    (0..k).map(move |i| {
                        let mut q = p.clone();
                        q.insert(i, k - 1);
                        q
                    })
                })
                .collect()
        }
        let n = a.n_vertices();
        perms(n).iter().any(|p| (0..n).all(|v| a.degree(v).abs_diff(b.degree(p[v])) <= 1))
    }

    proptest! {
        #[test]
        fn magnitude_routes_agree(g in crate::graph::tests::arb_digraph(5), cap in 0u32..5) {
            prop_assert_eq!(magnitude_series(&g, cap).unwrap(), magnitude_series_by_enumeration(&g, cap).unwrap());
        }

        #[test]
        fn regular_magnitude_matches_brute_force(g in crate::graph::tests::arb_digraph(5)) {
            let p = regular_magnitude(&g).unwrap();
            prop_assert_eq!(&p.coefficients, &regular_magnitude_oracle(&g));
            prop_assert_eq!(p.coefficient(0), g.n_vertices() as i128);
            prop_assert_eq!(p.coefficient(1), -(g.edge_count() as i128));
        }

        #[test]
        fn sorted_degree_rule_matches_search(i in 0usize..21, j in 0usize..21) {
            let classes = connected_graph_classes(5).unwrap();
            prop_assert_eq!(network_adjacent(&classes[i], &classes[j]), brute_adjacent(&classes[i], &classes[j]));
        }
    }
}
