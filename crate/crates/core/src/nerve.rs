//! Ordered simplicial complexes (directed flag complexes, complexes of
//! injective words, order complexes) and the length-filtered normalized
//! chains of the injective and ordinary nerves of the reachability category.

use std::fmt::Write as _;

use serde::Serialize;

use crate::complex::{is_injective, trail_length};
use crate::error::{Error, Result};
use crate::graph::{distance_matrix, DirectedGraph, DistanceMatrix};
use crate::homology::{field_rank, normalize_torsion, AbelianGroupInvariant};
use crate::scalar::{with_field, Field, FieldVisitor, Ring};
use crate::snf::smith_normal_form;
use crate::sparse::SparseMatrix;
use crate::Integer;

/// Simplices as ordered vertex tuples, grouped by dimension and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedSimplicialComplex {
    pub n_vertices: usize,
    simplices: Vec<Vec<Vec<usize>>>,
}

impl OrderedSimplicialComplex {
    /// Builds the complex from all tuples accepted by `extendable`, grown one
    /// vertex at a time; `extendable(prefix, v)` decides whether `v` may be
    /// appended to a valid `prefix`.
    fn grow(n: usize, extendable: impl Fn(&[usize], usize) -> bool) -> Self {
        let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut layer: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        while !layer.is_empty() {
            let next: Vec<Vec<usize>> = layer
                .iter()
                .flat_map(|s| {
                    (0..n).filter(|&v| !s.contains(&v) && extendable(s, v)).map(move |v| {
                        let mut t = s.clone();
                        t.push(v);
                        t
                    })
                })
                .collect();
            simplices.push(layer);
            layer = next;
        }
        for d in &mut simplices {
            d.sort();
        }
        OrderedSimplicialComplex { n_vertices: n, simplices }
    }

    /// Top dimension, or `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, p: usize) -> &[Vec<usize>] {
        self.simplices.get(p).map_or(&[], Vec::as_slice)
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(p, &c)| if p % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Every face of every simplex is present.
    pub fn is_closed(&self) -> bool {
        (1..self.simplices.len()).all(|p| {
            self.simplices[p].iter().all(|s| {
                (0..s.len()).all(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    self.simplices[p - 1].binary_search(&f).is_ok()
                })
            })
        })
    }

    /// Simplicial boundary `C_p → C_{p-1}`.
    pub fn boundary_matrix(&self, p: usize) -> SparseMatrix {
        let cols = self.simplices(p);
        if p == 0 {
            return SparseMatrix::zeros(0, cols.len());
        }
        let rows = self.simplices(p - 1);
        let mut triples = Vec::new();
        for (j, s) in cols.iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let r = rows.binary_search(&f).expect("complex is closed under faces");
                triples.push((r, j, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        SparseMatrix::from_triples(rows.len(), cols.len(), triples)
    }

    /// One simplex per line, vertices separated by spaces, by dimension.
    pub fn export(&self) -> String {
        let mut s = String::new();
        for d in &self.simplices {
            for simplex in d {
                let v: Vec<String> = simplex.iter().map(usize::to_string).collect();
                let _ = writeln!(s, "{}", v.join(" "));
            }
        }
        s
    }
}

/// Ordered cliques: tuples with an edge `x_i → x_j` for all `i < j`.
pub fn directed_flag(g: &DirectedGraph) -> OrderedSimplicialComplex {
    OrderedSimplicialComplex::grow(g.n_vertices(), |s, v| s.iter().all(|&u| g.has_edge(u, v)))
}

/// Injective words: distinct vertices with a directed path from `x_i` to
/// `x_j` whenever `i < j`.
pub fn injective_words(g: &DirectedGraph) -> OrderedSimplicialComplex {
    let dist = distance_matrix(g);
    OrderedSimplicialComplex::grow(g.n_vertices(), |s, v| {
        let last = *s.last().expect("non-empty simplex");
        dist.finite(last, v).is_some()
    })
}

fn check_poset(p: &DirectedGraph) -> Result<()> {
    if !p.is_acyclic() {
        return Err(Error::invalid("relation has a directed cycle; not a poset"));
    }
    if !p.is_transitive() {
        return Err(Error::invalid("relation is not transitively closed; not a poset"));
    }
    Ok(())
}

/// Chains `x_0 < … < x_k` of a strict partial order given as a transitive
/// acyclic digraph.
pub fn order_complex(p: &DirectedGraph) -> Result<OrderedSimplicialComplex> {
    check_poset(p)?;
    Ok(directed_flag(p))
}

/// Homology groups in degrees `0..=dim`. Over a field only ranks are filled.
pub fn simplicial_homology(k: &OrderedSimplicialComplex, ring: Ring) -> Result<Vec<AbelianGroupInvariant>> {
    let Some(top) = k.dimension() else {
        return Ok(Vec::new());
    };
    let boundaries: Vec<SparseMatrix> = (0..=top + 1).map(|p| k.boundary_matrix(p)).collect();
    chain_homology(&boundaries, &k.f_vector(), ring)
}

/// Homology of `C_0 ← C_1 ← …` given `∂_p` for `p = 0..=top+1` and the ranks of the chain groups.
pub(crate) fn chain_homology(
    boundaries: &[SparseMatrix],
    dims: &[usize],
    ring: Ring,
) -> Result<Vec<AbelianGroupInvariant>> {
    let top = dims.len();
    match ring {
        Ring::Integers => {
            let forms: Vec<_> = (0..=top)
                .map(|p| boundaries.get(p).map(smith_normal_form::<Integer>))
                .collect();
            Ok((0..top)
                .map(|p| {
                    let out = forms[p].as_ref().map_or(0, |f| f.rank());
                    let (inc, tors) = forms[p + 1]
                        .as_ref()
                        .map_or((0, Vec::new()), |f| (f.rank(), normalize_torsion(&f.torsion())));
                    AbelianGroupInvariant {
                        free_rank: dims[p] - out - inc,
                        torsion: tors,
                    }
                })
                .collect())
        }
        _ => {
            struct V<'a>(&'a [SparseMatrix], &'a [usize]);
            impl FieldVisitor for V<'_> {
                type Output = Vec<AbelianGroupInvariant>;
                fn visit<F: Field>(self) -> Self::Output {
                    let ranks: Vec<usize> = (0..=self.1.len())
                        .map(|p| self.0.get(p).map_or(0, field_rank::<F>))
                        .collect();
                    (0..self.1.len())
                        .map(|p| AbelianGroupInvariant::free(self.1[p] - ranks[p] - ranks[p + 1]))
                        .collect()
                }
            }
            with_field(ring, V(boundaries, dims))
        }
    }
}

/// Reduced ranks from unreduced groups.
pub fn reduced_ranks(h: &[AbelianGroupInvariant]) -> Vec<usize> {
    h.iter()
        .enumerate()
        .map(|(p, g)| if p == 0 { g.free_rank.saturating_sub(1) } else { g.free_rank })
        .collect()
}

/// A chain complex whose basis elements carry filtration values that the
/// boundary never increases.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    /// Basis of `C_k` as vertex tuples.
    pub cells: Vec<Vec<Vec<usize>>>,
    /// Filtration value of each basis element.
    pub filtration: Vec<Vec<u32>>,
    /// `∂_k : C_k → C_{k-1}` for `k = 0..cells.len()`.
    pub boundaries: Vec<SparseMatrix>,
    /// False when the complex was truncated and only approximates the nerve.
    pub certified: bool,
}

impl FilteredComplex {
    fn from_cells(mut cells: Vec<Vec<Vec<usize>>>, len: impl Fn(&[usize]) -> u32, degenerate: impl Fn(&[usize]) -> bool, certified: bool) -> Self {
        // sort by filtration, then lexicographically, so every F_p is a prefix
        for level in &mut cells {
            level.sort_by(|a, b| (len(a), a).cmp(&(len(b), b)));
        }
        let filtration: Vec<Vec<u32>> = cells.iter().map(|l| l.iter().map(|c| len(c)).collect()).collect();
        let boundaries = (0..cells.len())
            .map(|k| {
                if k == 0 {
                    return SparseMatrix::zeros(0, cells[0].len());
                }
                let rows = &cells[k - 1];
                let mut triples = Vec::new();
                for (j, c) in cells[k].iter().enumerate() {
                    for i in 0..c.len() {
                        let mut f = c.clone();
                        f.remove(i);
                        if degenerate(&f) {
                            continue;
                        }
                        let key = (len(&f), &f);
                        let r = rows
                            .binary_search_by(|x| (len(x), x).cmp(&key))
                            .expect("faces stay inside the truncated complex");
                        triples.push((r, j, if i % 2 == 0 { 1 } else { -1 }));
                    }
                }
                SparseMatrix::from_triples(rows.len(), cells[k].len(), triples)
            })
            .collect();
        FilteredComplex {
            cells,
            filtration,
            boundaries,
            certified,
        }
    }

    pub fn top_degree(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn dim(&self, k: usize) -> usize {
        self.cells.get(k).map_or(0, Vec::len)
    }

    /// Largest filtration value present.
    pub fn max_filtration(&self) -> u32 {
        self.filtration.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Number of basis elements of `C_k` with filtration exactly `p`.
    pub fn graded_dim(&self, k: usize, p: u32) -> usize {
        self.filtration.get(k).map_or(0, |f| f.iter().filter(|&&x| x == p).count())
    }

    /// Basis elements of `C_k` with filtration at most `p` (a prefix).
    pub fn prefix(&self, k: usize, p: u32) -> usize {
        self.filtration.get(k).map_or(0, |f| f.partition_point(|&x| x <= p))
    }

    /// Total homology, ignoring the filtration.
    pub fn homology(&self, ring: Ring) -> Result<Vec<AbelianGroupInvariant>> {
        let dims: Vec<usize> = self.cells.iter().map(Vec::len).collect();
        let mut b = self.boundaries.clone();
        b.push(SparseMatrix::zeros(dims.last().copied().unwrap_or(0), 0));
        chain_homology(&b, &dims, ring)
    }
}

/// Normalized chains of the injective nerve of the reachability category,
/// filtered by length. The complex is finite; `l_max` only truncates.
pub fn filtered_injective_nerve(g: &DirectedGraph, l_max: Option<u32>) -> FilteredComplex {
    let dist = distance_matrix(g);
    let inj = injective_words(g);
    let len = |t: &[usize]| trail_length(t, &dist).expect("reachable consecutive pairs");
    let cells: Vec<Vec<Vec<usize>>> = (0..=inj.dimension().unwrap_or(0))
        .map(|p| {
            inj.simplices(p)
                .iter()
                .filter(|s| l_max.is_none_or(|l| len(s) <= l))
                .cloned()
                .collect::<Vec<_>>()
        })
        .filter(|l: &Vec<Vec<usize>>| !l.is_empty())
        .collect();
    let certified = l_max.is_none_or(|l| l >= max_len(&inj, &dist));
    FilteredComplex::from_cells(cells, len, |_| false, certified)
}

fn max_len(inj: &OrderedSimplicialComplex, dist: &DistanceMatrix) -> u32 {
    (0..=inj.dimension().unwrap_or(0))
        .flat_map(|p| inj.simplices(p).iter())
        .filter_map(|s| trail_length(s, dist))
        .max()
        .unwrap_or(0)
}

/// Normalized chains of the ordinary nerve of the reachability category:
/// tuples with consecutive entries distinct and reachable, filtered by
/// length, truncated at length `l_max` and degree `k_max`. Faces with two
/// equal neighbours are degenerate and vanish.
pub fn filtered_nerve(g: &DirectedGraph, l_max: u32, k_max: usize) -> FilteredComplex {
    let dist = distance_matrix(g);
    let n = g.n_vertices();
    let len = |t: &[usize]| trail_length(t, &dist).expect("reachable consecutive pairs");
    let mut cells: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|v| vec![v]).collect()];
    for _ in 0..k_max {
        let next: Vec<Vec<usize>> = cells
            .last()
            .expect("non-empty")
            .iter()
            .flat_map(|c| {
                let last = *c.last().expect("non-empty cell");
                let base = len(c);
                let dist = &dist;
                (0..n).filter_map(move |v| {
                    let d = dist.finite(last, v).filter(|_| v != last)?;
                    (base + d <= l_max).then(|| {
                        let mut t = c.clone();
                        t.push(v);
                        t
                    })
                })
            })
            .collect();
        if next.is_empty() {
            break;
        }
        cells.push(next);
    }
    let degenerate = |t: &[usize]| t.windows(2).any(|w| w[0] == w[1]);
    FilteredComplex::from_cells(cells, len, degenerate, false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetCheck {
    /// Non-degenerate simplex counts per dimension of `N(P)` and `N^ι(P)`.
    pub nerve: Vec<usize>,
    pub injective_nerve: Vec<usize>,
    pub isomorphic: bool,
}

/// Compares the non-degenerate simplices of the nerve and the injective
/// nerve of a poset.
pub fn injective_nerve_poset_check(p: &DirectedGraph) -> Result<PosetCheck> {
    check_poset(p)?;
    let n = p.n_vertices();
    // non-degenerate nerve simplices: x_i != x_{i+1}, x_i <= x_{i+1}; any
    // such chain in a poset has at most n entries, so probing one degree
    // beyond n-1 certifies the count
    let mut nerve_cells: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|v| vec![v]).collect()];
    for _ in 0..n {
        let next: Vec<Vec<usize>> = nerve_cells
            .last()
            .expect("non-empty")
            .iter()
            .flat_map(|c| {
                let last = *c.last().expect("non-empty cell");
                p.out_neighbors(last).iter().map(move |&v| {
                    let mut t = c.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
        if next.is_empty() {
            break;
        }
        nerve_cells.push(next);
    }
    let inj = injective_words(p);
    let mut same = nerve_cells.len() == inj.f_vector().len();
    for (d, cells) in nerve_cells.iter_mut().enumerate() {
        cells.sort();
        same &= cells.iter().all(|c| is_injective(c)) && cells.as_slice() == inj.simplices(d);
    }
    Ok(PosetCheck {
        nerve: nerve_cells.iter().map(Vec::len).collect(),
        injective_nerve: inj.f_vector(),
        isomorphic: same,
    })
}
