//! Path homology and regular path homology of digraphs over a field.
//!
//! `A_n` is spanned by allowed regular paths (consecutive vertices joined by
//! an edge), `A^ι_n` by the allowed strongly regular ones (all vertices
//! distinct). The boundary is the full alternating face sum; faces that are
//! not regular vanish. `Ω_n = {x ∈ A_n : ∂x ∈ A_{n-1}}` is found as the
//! kernel of the coordinates of `∂x` on non-allowed faces.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::complex::is_injective;
use crate::error::Result;
use crate::graph::DirectedGraph;
use crate::linalg::{kernel, span_dim, DenseMatrix, QuotientBasis};
use crate::scalar::{with_field, Field, FieldVisitor, Ring};

/// Allowed paths of degree `n` in one variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSpaceBasis {
    pub degree: usize,
    pub allowed_regular: Vec<Vec<usize>>,
    pub allowed_strongly_regular: Vec<Vec<usize>>,
}

impl PathSpaceBasis {
    pub fn new(g: &DirectedGraph, n: usize) -> Self {
        let allowed_regular = allowed_paths(g, n, false);
        let allowed_strongly_regular = allowed_regular.iter().filter(|p| is_injective(p)).cloned().collect();
        PathSpaceBasis {
            degree: n,
            allowed_regular,
            allowed_strongly_regular,
        }
    }
}

/// Lexicographically sorted allowed paths with `n + 1` vertices.
pub fn allowed_paths(g: &DirectedGraph, n: usize, strong: bool) -> Vec<Vec<usize>> {
    fn grow(g: &DirectedGraph, n: usize, strong: bool, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if path.len() == n + 1 {
            out.push(path.clone());
            return;
        }
        let last = *path.last().expect("non-empty path");
        for &v in g.out_neighbors(last) {
            if strong && path.contains(&v) {
                continue;
            }
            path.push(v);
            grow(g, n, strong, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for s in 0..g.n_vertices() {
        grow(g, n, strong, &mut vec![s], &mut out);
    }
    out
}

/// Faces `(sign, face)` of a path in the regular quotient.
fn regular_faces(p: &[usize]) -> impl Iterator<Item = (i64, Vec<usize>)> + '_ {
    (0..p.len()).filter_map(move |i| {
        if i > 0 && i + 1 < p.len() && p[i - 1] == p[i + 1] {
            return None;
        }
        let mut f = p.to_vec();
        f.remove(i);
        Some((if i % 2 == 0 { 1 } else { -1 }, f))
    })
}

/// `Ω_n` (or `Ω^ι_n`) expressed in the allowed-path basis.
#[derive(Clone, Debug)]
pub struct OmegaSlice<F> {
    pub degree: usize,
    pub paths: Vec<Vec<usize>>,
    pub basis: Vec<Vec<F>>,
}

impl<F: Field> OmegaSlice<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn omega_basis<F: Field>(g: &DirectedGraph, n: usize, strong: bool) -> OmegaSlice<F> {
    let paths = allowed_paths(g, n, strong);
    if n == 0 {
        let basis = unit_vectors(paths.len());
        return OmegaSlice { degree: 0, paths, basis };
    }
    let lower = allowed_paths(g, n - 1, strong);
    let mut bad: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, i64)> = Vec::new();
    for (j, p) in paths.iter().enumerate() {
        let mut acc: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for (s, f) in regular_faces(p) {
            if lower.binary_search(&f).is_err() {
                *acc.entry(f).or_insert(0) += s;
            }
        }
        for (f, v) in acc.into_iter().filter(|&(_, v)| v != 0) {
            let next = bad.len();
            let r = *bad.entry(f).or_insert(next);
            entries.push((r, j, v));
        }
    }
    let basis = if bad.is_empty() {
        unit_vectors(paths.len())
    } else {
        let mut c = DenseMatrix::<F>::zeros(bad.len(), paths.len());
        for (r, j, v) in entries {
            c.set(r, j, F::from_i64(v));
        }
        kernel(&c)
    };
    OmegaSlice { degree: n, paths, basis }
}

fn unit_vectors<F: Field>(n: usize) -> Vec<Vec<F>> {
    (0..n)
        .map(|i| {
            let mut v = vec![F::zero(); n];
            v[i] = F::one();
            v
        })
        .collect()
}

/// `∂x` in the coordinates of `lower` paths (faces outside `lower` dropped).
fn boundary_in<F: Field>(x: &[F], paths: &[Vec<usize>], lower: &[Vec<usize>]) -> Vec<F> {
    let mut out = vec![F::zero(); lower.len()];
    for (c, p) in x.iter().zip(paths) {
        if c.is_zero() {
            continue;
        }
        for (s, f) in regular_faces(p) {
            if let Ok(i) = lower.binary_search(&f) {
                out[i] = out[i].clone() + c.clone() * F::from_i64(s);
            }
        }
    }
    out
}

/// The chain complex `(Ω_*, ∂)` up to a top degree.
#[derive(Clone, Debug)]
pub struct InvariantSubcomplex<F> {
    pub strong: bool,
    pub slices: Vec<OmegaSlice<F>>,
}

impl<F: Field> InvariantSubcomplex<F> {
    pub fn build(g: &DirectedGraph, strong: bool, top: usize) -> Self {
        let slices = (0..=top).map(|n| omega_basis::<F>(g, n, strong)).collect();
        InvariantSubcomplex { strong, slices }
    }

    /// Matrix of `∂ : Ω_n → Ω_{n-1}` in the chosen Ω bases.
    pub fn boundary(&self, n: usize) -> DenseMatrix<F> {
        let src = &self.slices[n];
        if n == 0 {
            return DenseMatrix::zeros(0, src.dim());
        }
        let dst = &self.slices[n - 1];
        let coords = QuotientBasis::new(&dst.basis, &[]);
        let cols: Vec<Vec<F>> = src
            .basis
            .iter()
            .map(|x| {
                let b = boundary_in(x, &src.paths, &dst.paths);
                coords.coordinates(&b).expect("boundary of an invariant path lies in Ω_{n-1}")
            })
            .collect();
        DenseMatrix::from_columns(dst.dim(), &cols)
    }

    /// Rank of `∂_n`, measured in allowed-path coordinates.
    fn boundary_rank(&self, n: usize) -> usize {
        if n == 0 || n >= self.slices.len() {
            return 0;
        }
        let src = &self.slices[n];
        let dst = &self.slices[n - 1];
        let images: Vec<Vec<F>> = src.basis.iter().map(|x| boundary_in(x, &src.paths, &dst.paths)).collect();
        span_dim(&images)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathHomology {
    /// Strongly regular variant (`Ω^ι`).
    pub strong: bool,
    pub ring: Ring,
    /// Ranks in degrees `0..ranks.len()`.
    pub ranks: Vec<usize>,
    /// True when all higher degrees are known to vanish.
    pub certified: bool,
}

impl PathHomology {
    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// Ranks of reduced homology.
    pub fn reduced(&self) -> Vec<usize> {
        let mut r = self.ranks.clone();
        if let Some(r0) = r.first_mut() {
            *r0 = r0.saturating_sub(1);
        }
        r
    }

    pub fn is_reduced_trivial(&self) -> bool {
        self.reduced().iter().all(|&r| r == 0)
    }

    pub fn to_json(&self) -> Value {
        let ranks: serde_json::Map<String, Value> = self
            .ranks
            .iter()
            .enumerate()
            .map(|(n, &r)| (n.to_string(), json!(r)))
            .collect();
        json!({
            "variant": if self.strong { "regular" } else { "ordinary" },
            "ring": self.ring.to_string(),
            "label": if self.certified { "certified" } else { "truncated" },
            "ranks": ranks,
        })
    }
}

/// Path homology ranks in degrees `0..=top`. The strongly regular complex
/// vanishes above `|V| - 1`, which is the default and certified there; the
/// ordinary variant needs `top` and is labelled truncated.
pub fn path_homology<F: Field>(g: &DirectedGraph, strong: bool, top: Option<usize>) -> Result<PathHomology> {
    let n = g.n_vertices();
    let bound = n.saturating_sub(1);
    let top = match (strong, top) {
        (_, Some(t)) => t,
        (true, None) => bound,
        (false, None) => {
            return Err(crate::Error::invalid("ordinary path homology needs a degree bound"));
        }
    };
    let complex = InvariantSubcomplex::<F>::build(g, strong, top + 1);
    let ranks: Vec<usize> = (0..=top)
        .map(|d| complex.slices[d].dim() - complex.boundary_rank(d) - complex.boundary_rank(d + 1))
        .collect();
    Ok(PathHomology {
        strong,
        ring: Ring::of::<F>(),
        ranks,
        certified: strong && top >= bound,
    })
}

/// [`path_homology`] with the field chosen at run time.
pub fn path_homology_over(g: &DirectedGraph, strong: bool, ring: Ring, top: Option<usize>) -> Result<PathHomology> {
    struct V<'a>(&'a DirectedGraph, bool, Option<usize>);
    impl FieldVisitor for V<'_> {
        type Output = Result<PathHomology>;
        fn visit<F: Field>(self) -> Self::Output {
            path_homology::<F>(self.0, self.1, self.2)
        }
    }
    with_field(ring, V(g, strong, top))?
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family, FamilyName};
    use crate::{Rational, F2};
    use num_traits::Zero;

    fn fam(f: FamilyName, n: usize) -> DirectedGraph {
        family(f, n).unwrap()
    }

    #[test]
    fn shortcut_makes_a_two_path_invariant() {
        let l3 = fam(FamilyName::DirLinear, 3);
        assert_eq!(omega_basis::<Rational>(&l3, 2, true).dim(), 0);
        let t2 = fam(FamilyName::Tournament, 2);
        // oracle: the only candidate is (0,1,2); its faces (1,2), (0,2), (0,1) are edges
        assert_eq!(allowed_paths(&t2, 2, true), vec![vec![0, 1, 2]]);
        assert_eq!(omega_basis::<Rational>(&t2, 2, true).dim(), 1);
    }

    #[test]
    fn low_degrees_are_vertices_and_edges() {
        for g in [fam(FamilyName::Cycle, 5), crate::graph::s1(), fam(FamilyName::Tournament, 3)] {
            for strong in [false, true] {
                assert_eq!(omega_basis::<Rational>(&g, 0, strong).dim(), g.n_vertices());
                assert_eq!(omega_basis::<Rational>(&g, 1, strong).dim(), g.edge_count());
            }
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        let g = fam(FamilyName::Complete, 4);
        for strong in [false, true] {
            let c = InvariantSubcomplex::<Rational>::build(&g, strong, 3);
            for n in 2..=3 {
                let p = c.boundary(n - 1).mul(&c.boundary(n));
                assert!(p.is_zero());
            }
        }
    }

    #[test]
    fn derangement_ranks_for_complete_graphs() {
        let h = path_homology::<Rational>(&fam(FamilyName::Complete, 3), true, None).unwrap();
        assert_eq!(h.reduced(), vec![0, 0, 2]);
        assert!(h.certified);
        let h = path_homology::<F2>(&fam(FamilyName::Complete, 3), true, None).unwrap();
        assert_eq!(h.reduced(), vec![0, 0, 2]);
    }

    #[test]
    fn trivial_cases() {
        let t4 = fam(FamilyName::Tournament, 4);
        assert!(path_homology::<Rational>(&t4, true, None).unwrap().is_reduced_trivial());
        let tree = DirectedGraph::new(5, [(0, 1), (0, 2), (2, 3), (4, 2)]).unwrap();
        assert!(path_homology::<Rational>(&tree, true, None).unwrap().is_reduced_trivial());
        let p = path_homology::<Rational>(&DirectedGraph::point(), true, None).unwrap();
        assert_eq!(p.ranks, vec![1]);
    }

    #[test]
    fn two_cycle_separates_the_variants() {
        let g = fam(FamilyName::Linear, 2);
        let strong = path_homology::<Rational>(&g, true, None).unwrap();
        assert_eq!(strong.ranks, vec![1, 1]);
        let ordinary = path_homology::<Rational>(&g, false, Some(2)).unwrap();
        assert_eq!(ordinary.ranks, vec![1, 0, 0]);
        assert!(!ordinary.certified);
        let square = DirectedGraph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let h = path_homology::<Rational>(&square, false, Some(3)).unwrap();
        assert_eq!(h.ranks, vec![1, 0, 0, 0]);
        let tri = fam(FamilyName::DirCycle, 3);
        assert_eq!(path_homology::<Rational>(&tri, true, None).unwrap().ranks, vec![1, 1, 0]);
    }

    #[test]
    fn invariant_elements_have_allowed_boundaries() {
        let g = crate::graph::s2();
        for n in 1..=3 {
            let s = omega_basis::<Rational>(&g, n, false);
            let lower = allowed_paths(&g, n - 1, false);
            for x in &s.basis {
                // recompute the boundary keeping every regular face
                let mut acc: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
                for (c, p) in x.iter().zip(&s.paths) {
                    for (sg, f) in regular_faces(p) {
                        let e = acc.entry(f).or_insert_with(Rational::zero);
                        *e = e.clone() + c.clone() * Rational::from_i64(sg);
                    }
                }
                for (f, v) in acc {
                    assert!(v.is_zero() || lower.binary_search(&f).is_ok());
                }
            }
        }
    }
}
