//! Tuple bases and boundary matrices of the magnitude chain complexes.
//!
//! A trail is a tuple `(x_0, …, x_k)` with consecutive entries distinct and
//! at finite distance; its length is the sum of consecutive distances. The
//! differential is `∂ = Σ_{i=1}^{k-1} (-1)^i ∂_i` where `∂_i` deletes `x_i`
//! when that preserves the length and is zero otherwise. Endpoints are never
//! deleted, so every map here preserves `(x_0, x_k)` and splits into
//! endpoint blocks.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{distance_matrix, induced_chain_map_check, opposite, DirectedGraph, DistanceMatrix};
use crate::sparse::SparseMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ChainKind {
    /// All trails (MC).
    Magnitude,
    /// Trails with pairwise distinct vertices (EMC).
    Eulerian,
    /// Trails revisiting a vertex, as the quotient MC/EMC (DMC).
    Discriminant,
}

impl ChainKind {
    pub fn short_name(self) -> &'static str {
        match self {
            ChainKind::Magnitude => "MC",
            ChainKind::Eulerian => "EMC",
            ChainKind::Discriminant => "DMC",
        }
    }

    fn admits(self, t: &[usize]) -> bool {
        match self {
            ChainKind::Magnitude => true,
            ChainKind::Eulerian => is_injective(t),
            ChainKind::Discriminant => !is_injective(t),
        }
    }
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

pub(crate) fn is_injective(t: &[usize]) -> bool {
    let mut seen = 0u128;
    for &v in t {
        if v >= 128 {
            return t.iter().enumerate().all(|(i, a)| t[i + 1..].iter().all(|b| a != b));
        }
        if seen >> v & 1 == 1 {
            return false;
        }
        seen |= 1 << v;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trail {
    pub vertices: Vec<usize>,
    pub length: u32,
}

impl Trail {
    /// Builds a trail, computing its length; `None` if some step is illegal.
    pub fn new(vertices: Vec<usize>, dist: &DistanceMatrix) -> Option<Trail> {
        let length = trail_length(&vertices, dist)?;
        Some(Trail { vertices, length })
    }

    /// Number of steps `k` of `(x_0, …, x_k)`.
    pub fn degree(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().expect("non-empty trail"))
    }

    pub fn is_eulerian(&self) -> bool {
        is_injective(&self.vertices)
    }
}

impl fmt::Display for Trail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vertices.iter().map(usize::to_string).collect();
        write!(f, "({})", v.join(","))
    }
}

/// Sum of consecutive distances; `None` if two consecutive entries coincide
/// or are at infinite distance.
pub fn trail_length(t: &[usize], dist: &DistanceMatrix) -> Option<u32> {
    t.windows(2).try_fold(0u32, |acc, w| {
        if w[0] == w[1] {
            return None;
        }
        dist.finite(w[0], w[1]).map(|d| acc + d)
    })
}

/// Faces `(i, ∂_i t)` of a trail that keep its length, `1 ≤ i ≤ k-1`.
pub fn length_preserving_faces<'a>(
    t: &'a [usize],
    dist: &'a DistanceMatrix,
) -> impl Iterator<Item = (usize, Vec<usize>)> + 'a {
    (1..t.len().saturating_sub(1)).filter_map(move |i| {
        let (a, x, b) = (t[i - 1], t[i], t[i + 1]);
        if a == b {
            return None;
        }
        let direct = dist.finite(a, b)?;
        let via = dist.finite(a, x)? + dist.finite(x, b)?;
        (direct == via).then(|| {
            let mut f = t.to_vec();
            f.remove(i);
            (i, f)
        })
    })
}

#[derive(Clone, Debug)]
pub struct BigradedComplex {
    graph: DirectedGraph,
    dist: DistanceMatrix,
    kind: ChainKind,
    l_max: u32,
    certified_bound: u32,
    bases: BTreeMap<(usize, u32), Vec<Trail>>,
}

/// Largest possible length of an eulerian trail: at most `n-1` steps of at
/// most the largest finite distance each.
pub fn certified_eulerian_bound(g: &DirectedGraph, dist: &DistanceMatrix) -> u32 {
    (g.n_vertices().saturating_sub(1) as u32) * dist.max_finite()
}

impl BigradedComplex {
    /// Enumerates all trails of the given kind with length at most `l_max`.
    ///
    /// `l_max` is mandatory for MC and DMC; for EMC it defaults to the
    /// certified bound, beyond which every eulerian group vanishes.
    pub fn build(g: &DirectedGraph, kind: ChainKind, l_max: Option<u32>) -> Result<Self> {
        let dist = distance_matrix(g);
        let certified_bound = certified_eulerian_bound(g, &dist);
        let l_max = match (kind, l_max) {
            (_, Some(l)) => l,
            (ChainKind::Eulerian, None) => certified_bound,
            (_, None) => {
                return Err(Error::invalid(format!("{kind} needs an explicit length bound")));
            }
        };
        let n = g.n_vertices();
        let per_start: Vec<Vec<Trail>> = (0..n)
            .into_par_iter()
            .map(|s| {
                let mut out = Vec::new();
                let mut path = vec![s];
                extend(g, &dist, kind, l_max, &mut path, 0, &mut out);
                out
            })
            .collect();
        let mut bases: BTreeMap<(usize, u32), Vec<Trail>> = BTreeMap::new();
        for t in per_start.into_iter().flatten() {
            bases.entry((t.degree(), t.length)).or_default().push(t);
        }
        for b in bases.values_mut() {
            b.sort();
        }
        Ok(BigradedComplex {
            graph: g.clone(),
            dist,
            kind,
            l_max,
            certified_bound,
            bases,
        })
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    /// True when every non-zero group of the theory lies within `l_max`
    /// (always the case for a default-built EMC).
    pub fn is_complete(&self) -> bool {
        self.kind == ChainKind::Eulerian && self.l_max >= self.certified_bound
    }

    pub fn certified_bound(&self) -> u32 {
        self.certified_bound
    }

    /// Bidegrees `(k, ℓ)` with non-empty basis, sorted.
    pub fn bidegrees(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.bases.keys().copied()
    }

    /// Largest `k` with a non-empty basis at length `l`.
    pub fn max_degree(&self, l: u32) -> Option<usize> {
        self.bases.keys().filter(|&&(_, ll)| ll == l).map(|&(k, _)| k).max()
    }

    /// Lexicographically sorted basis at `(k, ℓ)`; empty if none.
    pub fn basis(&self, k: usize, l: u32) -> &[Trail] {
        self.bases.get(&(k, l)).map_or(&[], Vec::as_slice)
    }

    pub fn rank(&self, k: usize, l: u32) -> usize {
        self.basis(k, l).len()
    }

    pub fn index_of(&self, k: usize, l: u32, vertices: &[usize]) -> Option<usize> {
        self.basis(k, l)
            .binary_search_by(|t| t.vertices.as_slice().cmp(vertices))
            .ok()
    }

    /// Matrix of `∂ : C_{k,ℓ} → C_{k-1,ℓ}` with columns indexed by `basis(k,ℓ)`.
    pub fn boundary_matrix(&self, k: usize, l: u32) -> SparseMatrix {
        let cols = self.basis(k, l);
        if k == 0 {
            return SparseMatrix::zeros(0, cols.len());
        }
        let rows = self.rank(k - 1, l);
        let mut triples = Vec::new();
        for (j, t) in cols.iter().enumerate() {
            for (i, face) in length_preserving_faces(&t.vertices, &self.dist) {
                // faces outside the basis vanish (DMC quotient)
                if let Some(r) = self.index_of(k - 1, l, &face) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    triples.push((r, j, sign));
                }
            }
        }
        SparseMatrix::from_triples(rows, cols.len(), triples)
    }

    /// Indices of basis elements of `(k, ℓ)` grouped by endpoints.
    pub fn endpoint_blocks(&self, k: usize, l: u32) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut blocks: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, t) in self.basis(k, l).iter().enumerate() {
            blocks.entry(t.endpoints()).or_default().push(i);
        }
        blocks
    }

    /// `∂_{k,ℓ}` split into endpoint blocks. Each entry gives the row and
    /// column index lists together with the block matrix.
    pub fn boundary_blocks(&self, k: usize, l: u32) -> Vec<BoundaryBlock> {
        let full = self.boundary_matrix(k, l);
        let cols = self.endpoint_blocks(k, l);
        let rows = if k == 0 {
            BTreeMap::new()
        } else {
            self.endpoint_blocks(k - 1, l)
        };
        let mut keys: Vec<(usize, usize)> = cols.keys().chain(rows.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .map(|e| {
                let r = rows.get(&e).cloned().unwrap_or_default();
                let c = cols.get(&e).cloned().unwrap_or_default();
                let matrix = full.submatrix(&r, &c);
                BoundaryBlock {
                    endpoints: e,
                    rows: r,
                    cols: c,
                    matrix,
                }
            })
            .collect()
    }

    /// Coordinate-list dump of `∂_{k,ℓ}` headed by graph name, kind and bidegree.
    pub fn dump_boundary(&self, name: &str, k: usize, l: u32) -> String {
        self.boundary_matrix(k, l)
            .to_coordinate_text(&format!("{name} kind={} k={k} l={l}", self.kind))
    }
}

#[derive(Clone, Debug)]
pub struct BoundaryBlock {
    pub endpoints: (usize, usize),
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub matrix: SparseMatrix,
}

fn extend(
    g: &DirectedGraph,
    dist: &DistanceMatrix,
    kind: ChainKind,
    l_max: u32,
    path: &mut Vec<usize>,
    len: u32,
    out: &mut Vec<Trail>,
) {
    if kind.admits(path) {
        out.push(Trail {
            vertices: path.clone(),
            length: len,
        });
    }
    let last = *path.last().expect("non-empty path");
    for v in 0..g.n_vertices() {
        if v == last {
            continue;
        }
        if kind == ChainKind::Eulerian && path.contains(&v) {
            continue;
        }
        let Some(d) = dist.finite(last, v) else { continue };
        if len + d > l_max {
            continue;
        }
        path.push(v);
        extend(g, dist, kind, l_max, path, len + d, out);
        path.pop();
    }
}

/// Matrix of `f_* : C_{k,ℓ}(G) → C_{k,ℓ}(H)` for an injective edge-preserving
/// vertex map `f`. Trails whose image is shorter map to zero.
pub fn induced_chain_map(
    f: &[usize],
    source: &BigradedComplex,
    target: &BigradedComplex,
    k: usize,
    l: u32,
) -> Result<SparseMatrix> {
    if let crate::graph::MorphismVerdict::NotRegular(reason) =
        induced_chain_map_check(f, source.graph(), target.graph())
    {
        return Err(Error::precondition(format!("map is not regular: {reason}")));
    }
    if source.kind() != target.kind() {
        return Err(Error::invalid("source and target complexes have different kinds"));
    }
    let cols = source.basis(k, l);
    let mut triples = Vec::new();
    for (j, t) in cols.iter().enumerate() {
        let image: Vec<usize> = t.vertices.iter().map(|&v| f[v]).collect();
        if trail_length(&image, target.distances()) != Some(l) {
            continue;
        }
        let i = target
            .index_of(k, l, &image)
            .ok_or_else(|| Error::cap(format!("image trail beyond the target length bound {}", target.l_max())))?;
        triples.push((i, j, 1));
    }
    Ok(SparseMatrix::from_triples(target.rank(k, l), cols.len(), triples))
}

/// Basis bijection `C_{k,ℓ}(G) → C_{k,ℓ}(G^op)` reversing every tuple.
pub fn reversal_map(source: &BigradedComplex, target: &BigradedComplex, k: usize, l: u32) -> Result<SparseMatrix> {
    if opposite(source.graph()) != *target.graph() {
        return Err(Error::invalid("target graph is not the opposite of the source"));
    }
    let cols = source.basis(k, l);
    let mut triples = Vec::with_capacity(cols.len());
    for (j, t) in cols.iter().enumerate() {
        let rev: Vec<usize> = t.vertices.iter().rev().copied().collect();
        let i = target
            .index_of(k, l, &rev)
            .ok_or_else(|| Error::invalid(format!("reversed trail {t} missing from target basis")))?;
        triples.push((i, j, 1));
    }
    Ok(SparseMatrix::from_triples(target.rank(k, l), cols.len(), triples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family, FamilyName};
    use proptest::prelude::*;

    fn fam(f: FamilyName, n: usize) -> DirectedGraph {
        family(f, n).unwrap()
    }

    // Brute force over all tuples of length k+1 in V^{k+1}.
    fn brute_force(g: &DirectedGraph, kind: ChainKind, k: usize, l: u32) -> Vec<Vec<usize>> {
        let n = g.n_vertices();
        let dist = distance_matrix(g);
        let mut out = Vec::new();
        let total = n.pow(k as u32 + 1);
        for code in 0..total {
            let mut c = code;
            let t: Vec<usize> = (0..=k)
                .map(|_| {
                    let v = c % n;
                    c /= n;
                    v
                })
                .collect();
            let t: Vec<usize> = t.into_iter().rev().collect();
            if trail_length(&t, &dist) == Some(l) && kind.admits(&t) {
                out.push(t);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn bases_match_brute_force() {
        for g in [
            fam(FamilyName::Complete, 3),
            fam(FamilyName::Cycle, 5),
            fam(FamilyName::DirLinear, 4),
            crate::graph::s1(),
        ] {
            for kind in [ChainKind::Magnitude, ChainKind::Eulerian, ChainKind::Discriminant] {
                let c = BigradedComplex::build(&g, kind, Some(4)).unwrap();
                for k in 0..=4 {
                    for l in 0..=4 {
                        let got: Vec<Vec<usize>> = c.basis(k, l).iter().map(|t| t.vertices.clone()).collect();
                        assert_eq!(got, brute_force(&g, kind, k, l), "{kind} k={k} l={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn small_bases() {
        let k3 = fam(FamilyName::Complete, 3);
        let emc = BigradedComplex::build(&k3, ChainKind::Eulerian, None).unwrap();
        assert_eq!(emc.rank(2, 2), 6);
        assert_eq!(emc.rank(1, 2), 0);
        assert_eq!(emc.boundary_matrix(2, 2).rows(), 0);
        assert!(emc.is_complete());
        assert_eq!(emc.certified_bound(), 2);

        let i2 = fam(FamilyName::Linear, 2);
        let mc = BigradedComplex::build(&i2, ChainKind::Magnitude, Some(3)).unwrap();
        let got: Vec<Vec<usize>> = mc.basis(2, 2).iter().map(|t| t.vertices.clone()).collect();
        assert_eq!(got, vec![vec![0, 1, 0], vec![1, 0, 1]]);
        assert!(mc.boundary_matrix(2, 2).is_zero());
        let emc = BigradedComplex::build(&i2, ChainKind::Eulerian, Some(3)).unwrap();
        assert_eq!(emc.rank(2, 2), 0);
        assert!(BigradedComplex::build(&i2, ChainKind::Magnitude, None).is_err());
    }

    #[test]
    fn eulerian_is_lower_triangular() {
        let c = BigradedComplex::build(&fam(FamilyName::Cycle, 5), ChainKind::Eulerian, None).unwrap();
        assert!(c.bidegrees().all(|(k, l)| k as u32 <= l));
        assert_eq!(c.rank(3, 2), 0);
    }

    #[test]
    fn boundary_squares_to_zero_on_c5() {
        let c = BigradedComplex::build(&fam(FamilyName::Cycle, 5), ChainKind::Magnitude, Some(3)).unwrap();
        for k in 2..=3 {
            let p = c.boundary_matrix(k - 1, 3).mul(&c.boundary_matrix(k, 3));
            assert!(p.is_zero());
        }
    }

    #[test]
    fn identity_and_inclusion_maps_commute_with_boundary() {
        let k3 = fam(FamilyName::Complete, 3);
        let k4 = fam(FamilyName::Complete, 4);
        let a = BigradedComplex::build(&k3, ChainKind::Eulerian, None).unwrap();
        let b = BigradedComplex::build(&k4, ChainKind::Eulerian, None).unwrap();
        let id = induced_chain_map(&[0, 1, 2], &a, &a, 2, 2).unwrap();
        assert_eq!(id.to_dense_i64(), (0..6).map(|i| (0..6).map(|j| i64::from(i == j)).collect::<Vec<i64>>()).collect::<Vec<_>>());
        for (k, l) in [(2, 2), (1, 1), (2, 3)] {
            let f = induced_chain_map(&[0, 1, 2], &a, &b, k, l).unwrap();
            let lhs = b.boundary_matrix(k, l).mul(&f);
            let g = induced_chain_map(&[0, 1, 2], &a, &b, k - 1, l).unwrap();
            let rhs = g.mul(&a.boundary_matrix(k, l));
            assert_eq!(lhs, rhs);
        }
        let f = induced_chain_map(&[0, 1, 2], &a, &b, 2, 2).unwrap();
        // injective on columns: every column has exactly one entry
        assert_eq!(f.nnz(), 6);
        let c4 = BigradedComplex::build(&fam(FamilyName::Cycle, 4), ChainKind::Eulerian, None).unwrap();
        let c3 = BigradedComplex::build(&fam(FamilyName::Cycle, 3), ChainKind::Eulerian, None).unwrap();
        assert!(induced_chain_map(&[0, 1, 2, 2], &c4, &c3, 1, 1).is_err());
    }

    #[test]
    fn reversal_is_a_bijection() {
        let g = crate::graph::s2();
        let a = BigradedComplex::build(&g, ChainKind::Eulerian, None).unwrap();
        let b = BigradedComplex::build(&opposite(&g), ChainKind::Eulerian, None).unwrap();
        for (k, l) in a.bidegrees().collect::<Vec<_>>() {
            let r = reversal_map(&a, &b, k, l).unwrap();
            assert_eq!(r.rows(), r.cols());
            assert_eq!(r.nnz(), r.cols());
        }
    }

    #[test]
    fn matrix_dump() {
        let c = BigradedComplex::build(&fam(FamilyName::DirLinear, 3), ChainKind::Eulerian, None).unwrap();
        let text = c.dump_boundary("L3", 2, 2);
        assert_eq!(text, "# L3 kind=EMC k=2 l=2 rows=1 cols=1\n0 0 -1\n");
    }

    #[test]
    fn cycle_count_estimate_is_not_a_bound() {
        // 2 C(n,k+1) C(l-1,k) ignores tuples that change direction around
        // the cycle; already the edges of C_3 exceed it.
        fn binom(n: u64, k: u64) -> u64 {
            if k > n {
                return 0;
            }
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        let c = BigradedComplex::build(&fam(FamilyName::Cycle, 3), ChainKind::Eulerian, None).unwrap();
        assert_eq!(c.rank(1, 1), 6);
        assert_eq!(2 * binom(3, 2) * binom(0, 1), 0);
        let c = BigradedComplex::build(&fam(FamilyName::Cycle, 5), ChainKind::Eulerian, None).unwrap();
        assert_eq!(c.rank(4, 6), 60);
        assert_eq!(2 * binom(5, 5) * binom(5, 4), 10);
    }

    proptest! {
        #[test]
        fn chain_level_split(g in crate::graph::tests::arb_digraph(5), l in 0u32..4) {
            let mc = BigradedComplex::build(&g, ChainKind::Magnitude, Some(l)).unwrap();
            let emc = BigradedComplex::build(&g, ChainKind::Eulerian, Some(l)).unwrap();
            let dmc = BigradedComplex::build(&g, ChainKind::Discriminant, Some(l)).unwrap();
            for k in 0..=l as usize {
                prop_assert_eq!(mc.rank(k, l), emc.rank(k, l) + dmc.rank(k, l));
            }
            for c in [&mc, &emc, &dmc] {
                for k in 2..=l as usize {
                    let p = c.boundary_matrix(k - 1, l).mul(&c.boundary_matrix(k, l));
                    prop_assert!(p.is_zero());
                    prop_assert!(c.boundary_matrix(k, l).entries().iter().all(|e| e.2.abs() == 1));
                }
            }
        }

        #[test]
        fn eulerian_bases_are_lower_triangular(g in crate::graph::tests::arb_digraph(6)) {
            let emc = BigradedComplex::build(&g, ChainKind::Eulerian, None).unwrap();
            prop_assert!(emc.bidegrees().all(|(k, l)| k as u32 <= l));
            prop_assert!(emc.bidegrees().all(|(_, l)| l <= emc.certified_bound()));
        }
    }
}
