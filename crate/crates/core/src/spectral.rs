//! Spectral sequences of length-filtered chain complexes, computed page by
//! page from the subquotients `Z^r / (Z^{r-1}_{l-1} + ∂ Z^{r-1}_{l+r-1})`.
//!
//! Bidegrees are written `(l, k)`: filtration `l` and total degree `k`. The
//! page-`r` differential goes from `(l, k)` to `(l - r, k - 1)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::homology::eulerian_homology;
use crate::linalg::{kernel, DenseMatrix, QuotientBasis};
use crate::nerve::{filtered_injective_nerve, filtered_nerve, injective_words, simplicial_homology, FilteredComplex};
use crate::path::path_homology;
use crate::scalar::{with_field, Field, FieldVisitor, Ring};

type Bidegree = (u32, usize);

#[derive(Clone)]
pub struct SpectralPage<F> {
    pub r: usize,
    /// Nonzero ranks only.
    pub ranks: BTreeMap<Bidegree, usize>,
    /// `d^r` out of `(l, k)`, in the page bases; omitted when either end is zero.
    pub differentials: BTreeMap<Bidegree, DenseMatrix<F>>,
}

impl<F: Field> SpectralPage<F> {
    pub fn rank(&self, l: u32, k: usize) -> usize {
        self.ranks.get(&(l, k)).copied().unwrap_or(0)
    }

    /// Sum of ranks over the line of total degree `k`.
    pub fn total(&self, k: usize) -> usize {
        self.ranks.iter().filter(|((_, d), _)| *d == k).map(|(_, r)| r).sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        let top = self.ranks.keys().map(|&(_, k)| k + 1).max().unwrap_or(0);
        (0..top).map(|k| self.total(k)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .map(|(&(_, k), &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// `d^r` as a matrix, zero-filled when not stored.
    pub fn differential(&self, l: u32, k: usize) -> DenseMatrix<F> {
        if let Some(m) = self.differentials.get(&(l, k)) {
            return m.clone();
        }
        let target = match (l.checked_sub(self.r as u32), k.checked_sub(1)) {
            (Some(tl), Some(tk)) => self.rank(tl, tk),
            _ => 0,
        };
        DenseMatrix::zeros(target, self.rank(l, k))
    }

    pub fn has_zero_differentials(&self) -> bool {
        self.differentials.values().all(DenseMatrix::is_zero)
    }

    fn to_json(&self, r: Value, with_differentials: bool) -> Value {
        let entries: Vec<Value> = self
            .ranks
            .iter()
            .map(|(&(l, k), &rank)| json!({"l": l, "k": k, "rank": rank}))
            .collect();
        let mut page = json!({"r": r, "entries": entries});
        if with_differentials {
            let diffs: Vec<Value> = self
                .differentials
                .iter()
                .map(|(&(l, k), m)| {
                    let mut coords = Vec::new();
                    for i in 0..m.rows() {
                        for j in 0..m.cols() {
                            if !m.get(i, j).is_zero() {
                                coords.push(json!([i, j, m.get(i, j).to_string()]));
                            }
                        }
                    }
                    json!({"l": l, "k": k, "rows": m.rows(), "cols": m.cols(), "entries": coords})
                })
                .collect();
            page["differentials"] = Value::Array(diffs);
        }
        page
    }
}

#[derive(Clone)]
pub struct SpectralSequence<F> {
    /// Pages `1..=r_max`.
    pub pages: Vec<SpectralPage<F>>,
    /// The page at `r = max filtration + 1`, where every later differential vanishes.
    pub infinity: SpectralPage<F>,
    pub max_filtration: u32,
    /// False for a truncated filtered complex; then only low bidegrees are meaningful.
    pub certified: bool,
}

impl<F: Field> SpectralSequence<F> {
    /// Page `r`, falling back to `E_∞` beyond the stabilization point.
    pub fn page(&self, r: usize) -> Option<&SpectralPage<F>> {
        if r >= 1 && r <= self.pages.len() {
            Some(&self.pages[r - 1])
        } else if r > self.max_filtration as usize {
            Some(&self.infinity)
        } else {
            None
        }
    }

    /// First computed page whose ranks already equal `E_∞`.
    pub fn collapse_page(&self) -> Option<usize> {
        self.pages.iter().find(|p| p.ranks == self.infinity.ranks).map(|p| p.r)
    }

    /// `{r, entries:[{l,k,rank}]}` per page, then `E_∞` with `r = "inf"`.
    pub fn to_json(&self, with_differentials: bool) -> Value {
        let mut pages: Vec<Value> = self
            .pages
            .iter()
            .map(|p| p.to_json(json!(p.r), with_differentials))
            .collect();
        pages.push(self.infinity.to_json(json!("inf"), false));
        Value::Array(pages)
    }
}

/// Filtered boundary data shared by every page computation.
struct Engine<'a, F> {
    f: &'a FilteredComplex,
    d: Vec<DenseMatrix<F>>,
}

impl<'a, F: Field> Engine<'a, F> {
    fn new(f: &'a FilteredComplex) -> Self {
        let d = f.boundaries.iter().map(DenseMatrix::from_sparse).collect();
        Engine { f, d }
    }

    fn degrees(&self) -> usize {
        self.f.cells.len()
    }

    fn prefix(&self, k: usize, l: i64) -> usize {
        if l < 0 {
            0
        } else {
            self.f.prefix(k, l.min(u32::MAX as i64) as u32)
        }
    }

    /// `Z^r_{l,k} = {x ∈ F_l C_k : ∂x ∈ F_{l-r}}` as full-length vectors.
    fn z(&self, r: i64, l: i64, k: usize) -> Vec<Vec<F>> {
        if k >= self.degrees() {
            return Vec::new();
        }
        let p = self.prefix(k, l);
        let n = self.f.dim(k);
        let pad = |v: Vec<F>| {
            let mut full = v;
            full.resize(n, F::zero());
            full
        };
        if k == 0 || p == 0 {
            return (0..p)
                .map(|j| {
                    let mut e = vec![F::zero(); p];
                    e[j] = F::one();
                    pad(e)
                })
                .collect();
        }
        let lo = self.prefix(k - 1, l - r);
        let d = &self.d[k];
        let mut m = DenseMatrix::zeros(d.rows() - lo, p);
        for i in lo..d.rows() {
            for j in 0..p {
                let x = d.get(i, j);
                if !x.is_zero() {
                    m.set(i - lo, j, x.clone());
                }
            }
        }
        kernel(&m).into_iter().map(pad).collect()
    }

    fn boundary(&self, k: usize, v: &[F]) -> Vec<F> {
        self.d[k].apply(v)
    }

    /// `E^r_{l,k}` as a quotient of subspaces of `C_k`.
    fn space(&self, r: usize, l: u32, k: usize) -> QuotientBasis<F> {
        let (r, li) = (r as i64, l as i64);
        let num = self.z(r, li, k);
        let mut den = self.z(r - 1, li - 1, k);
        if k + 1 < self.degrees() {
            den.extend(self.z(r - 1, li + r - 1, k + 1).iter().map(|x| self.boundary(k + 1, x)));
        }
        QuotientBasis::new(&num, &den)
    }

    fn bidegrees(&self) -> Vec<Bidegree> {
        let top = self.f.max_filtration();
        (0..self.degrees())
            .flat_map(|k| (0..=top).map(move |l| (l, k)))
            .filter(|&(l, k)| self.f.graded_dim(k, l) > 0)
            .collect()
    }

    fn layer(&self, r: usize) -> BTreeMap<Bidegree, QuotientBasis<F>> {
        self.bidegrees()
            .into_par_iter()
            .map(|(l, k)| ((l, k), self.space(r, l, k)))
            .filter(|(_, q)| q.dim() > 0)
            .collect()
    }

    fn page(&self, r: usize) -> (SpectralPage<F>, BTreeMap<Bidegree, QuotientBasis<F>>) {
        let layer = self.layer(r);
        let mut differentials = BTreeMap::new();
        for (&(l, k), src) in &layer {
            let (Some(tl), Some(tk)) = (l.checked_sub(r as u32), k.checked_sub(1)) else {
                continue;
            };
            let Some(tgt) = layer.get(&(tl, tk)) else {
                continue;
            };
            let cols: Vec<Vec<F>> = src
                .representatives()
                .iter()
                .map(|x| {
                    tgt.coordinates(&self.boundary(k, x))
                        .expect("boundary of a page cycle lies in the target numerator")
                })
                .collect();
            differentials.insert((l, k), DenseMatrix::from_columns(tgt.dim(), &cols));
        }
        let ranks = layer.iter().map(|(&b, q)| (b, q.dim())).collect();
        (
            SpectralPage {
                r,
                ranks,
                differentials,
            },
            layer,
        )
    }
}

/// Pages `1..=r_max` and `E_∞` of the spectral sequence of `f`.
pub fn spectral_pages<F: Field>(f: &FilteredComplex, r_max: usize) -> SpectralSequence<F> {
    let engine = Engine::<F>::new(f);
    let pages = (1..=r_max).map(|r| engine.page(r).0).collect();
    let max_filtration = f.max_filtration();
    let mut infinity = engine.page(max_filtration as usize + 1).0;
    infinity.differentials.clear();
    SpectralSequence {
        pages,
        infinity,
        max_filtration,
        certified: f.certified,
    }
}

/// The spectral sequence of the length filtration on the injective nerve.
pub fn regular_mpss<F: Field>(g: &DirectedGraph, r_max: usize) -> SpectralSequence<F> {
    spectral_pages(&filtered_injective_nerve(g, None), r_max)
}

/// The same for the ordinary nerve, truncated at length `l_max`.
pub fn ordinary_mpss<F: Field>(g: &DirectedGraph, l_max: u32, r_max: usize) -> SpectralSequence<F> {
    spectral_pages(&filtered_nerve(g, l_max, l_max as usize), r_max)
}

/// JSON page dump of either sequence with the field chosen at run time.
/// `l_max` is required for the ordinary nerve.
pub fn mpss_json(
    g: &DirectedGraph,
    ring: Ring,
    regular: bool,
    l_max: Option<u32>,
    r_max: usize,
    with_differentials: bool,
) -> Result<Value> {
    if !regular && l_max.is_none() {
        return Err(Error::invalid("the ordinary nerve needs a length bound"));
    }
    struct V<'a>(&'a DirectedGraph, bool, Option<u32>, usize, bool);
    impl FieldVisitor for V<'_> {
        type Output = Value;
        fn visit<F: Field>(self) -> Value {
            let (seq, truncated_at) = if self.1 {
                (regular_mpss::<F>(self.0, self.3), None)
            } else {
                let l = self.2.expect("checked above");
                (ordinary_mpss::<F>(self.0, l, self.3), Some(l))
            };
            json!({
                "sequence": if self.1 { "regular" } else { "ordinary" },
                "label": if seq.certified { "certified" } else { "truncated" },
                "l_max": truncated_at,
                "pages": seq.to_json(self.4),
            })
        }
    }
    let mut v = with_field(ring, V(g, regular, l_max, r_max, with_differentials))?;
    v["ring"] = json!(ring.to_string());
    Ok(v)
}

/// Matrices of the map from the regular to the ordinary sequence induced by
/// the inclusion of the injective nerve into the nerve.
#[derive(Clone)]
pub struct PageMap<F> {
    pub l_max: u32,
    /// `maps[r - 1][(l, k)]`, present for `l + r - 1 <= l_max`.
    pub maps: Vec<BTreeMap<Bidegree, DenseMatrix<F>>>,
    pub regular: SpectralSequence<F>,
    pub ordinary: SpectralSequence<F>,
}

impl<F: Field> PageMap<F> {
    pub fn map(&self, r: usize, l: u32, k: usize) -> Option<&DenseMatrix<F>> {
        self.maps.get(r.checked_sub(1)?)?.get(&(l, k))
    }

    /// Bidegrees `(r, l, k)` where `f ∘ d ≠ d ∘ f`.
    pub fn commutation_failures(&self) -> Vec<(usize, u32, usize)> {
        let mut bad = Vec::new();
        for (idx, maps) in self.maps.iter().enumerate() {
            let r = idx + 1;
            let (reg, ord) = (&self.regular.pages[idx], &self.ordinary.pages[idx]);
            for (&(l, k), f_src) in maps {
                let (Some(tl), Some(tk)) = (l.checked_sub(r as u32), k.checked_sub(1)) else {
                    continue;
                };
                let Some(f_tgt) = maps.get(&(tl, tk)) else {
                    // both target groups vanish
                    continue;
                };
                let lhs = f_tgt.mul(&reg.differential(l, k));
                let rhs = ord.differential(l, k).mul(f_src);
                if lhs != rhs {
                    bad.push((r, l, k));
                }
            }
        }
        bad
    }
}

/// Builds both sequences (the ordinary one truncated at `l_max`) and the
/// induced maps on pages `1..=r_max`.
pub fn page_map<F: Field>(g: &DirectedGraph, l_max: u32, r_max: usize) -> PageMap<F> {
    let reg_f = filtered_injective_nerve(g, None);
    let ord_f = filtered_nerve(g, l_max, l_max as usize);
    let reg = Engine::<F>::new(&reg_f);
    let ord = Engine::<F>::new(&ord_f);
    let embed: Vec<Vec<Option<usize>>> = reg_f
        .cells
        .iter()
        .enumerate()
        .map(|(k, cells)| {
            let target: BTreeMap<&[usize], usize> = ord_f
                .cells
                .get(k)
                .map(|c| c.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect())
                .unwrap_or_default();
            cells.iter().map(|c| target.get(c.as_slice()).copied()).collect()
        })
        .collect();
    let mut regular_pages = Vec::new();
    let mut ordinary_pages = Vec::new();
    let mut maps = Vec::new();
    for r in 1..=r_max {
        let (rp, rl) = reg.page(r);
        let (op, ol) = ord.page(r);
        let mut m = BTreeMap::new();
        let mut bidegrees = reg.bidegrees();
        bidegrees.extend(ord.bidegrees());
        bidegrees.sort();
        bidegrees.dedup();
        for (l, k) in bidegrees {
            if l as usize + r - 1 > l_max as usize {
                continue;
            }
            let src: &[Vec<F>] = rl.get(&(l, k)).map_or(&[], |q| q.representatives());
            let tgt = ol.get(&(l, k));
            let rows = tgt.map_or(0, QuotientBasis::dim);
            if src.is_empty() && rows == 0 {
                continue;
            }
            let cols: Vec<Vec<F>> = src
                .iter()
                .map(|x| {
                    let mut y = vec![F::zero(); ord_f.dim(k)];
                    for (i, v) in x.iter().enumerate() {
                        if !v.is_zero() {
                            let j = embed[k][i].expect("injective cells below l_max lie in the nerve");
                            y[j] = v.clone();
                        }
                    }
                    tgt.map_or_else(Vec::new, |q| q.coordinates(&y).expect("inclusion is a filtered chain map"))
                })
                .collect();
            m.insert((l, k), DenseMatrix::from_columns(rows, &cols));
        }
        regular_pages.push(rp);
        ordinary_pages.push(op);
        maps.push(m);
    }
    let finish = |e: &Engine<F>, f: &FilteredComplex, pages| {
        let mut infinity = e.page(f.max_filtration() as usize + 1).0;
        infinity.differentials.clear();
        SpectralSequence {
            pages,
            infinity,
            max_filtration: f.max_filtration(),
            certified: f.certified,
        }
    };
    PageMap {
        l_max,
        maps,
        regular: finish(&reg, &reg_f, regular_pages),
        ordinary: finish(&ord, &ord_f, ordinary_pages),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RmpssItem {
    pub item: &'static str,
    pub passed: bool,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RmpssReport {
    pub ring: String,
    pub items: Vec<RmpssItem>,
    /// Total `E_∞` rank per degree.
    pub e_infinity: Vec<usize>,
    pub collapse_page: Option<usize>,
}

impl RmpssReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

fn item(name: &'static str, mismatches: Vec<String>) -> RmpssItem {
    RmpssItem {
        item: name,
        passed: mismatches.is_empty(),
        mismatches,
    }
}

fn rmpss_report_in<F: Field>(g: &DirectedGraph) -> Result<RmpssReport> {
    let ring = Ring::of::<F>();
    let seq = regular_mpss::<F>(g, 2);
    let emh = eulerian_homology(g, ring, "G")?;

    let mut page1 = Vec::new();
    let e1 = &seq.pages[0];
    let mut keys: Vec<(u32, usize)> = emh.nonzero().map(|((k, l), _)| (l, k)).collect();
    keys.extend(e1.ranks.keys().copied());
    keys.sort();
    keys.dedup();
    for (l, k) in keys {
        let (a, b) = (e1.rank(l, k), emh.rank(k, l));
        if a != b {
            page1.push(format!("(l,k)=({l},{k}): page 1 rank {a}, EMH rank {b}"));
        }
    }

    let rph = path_homology::<F>(g, true, None)?;
    let e2 = &seq.pages[1];
    let mut page2 = Vec::new();
    for k in 0..rph.ranks.len().max(e2.totals().len()) {
        let (a, b) = (e2.rank(k as u32, k), rph.rank(k));
        if a != b {
            page2.push(format!("(l,k)=({k},{k}): page 2 rank {a}, RPH rank {b}"));
        }
    }

    let inj: Vec<usize> = simplicial_homology(&injective_words(g), ring)?
        .iter()
        .map(|h| h.free_rank)
        .collect();
    let totals = seq.infinity.totals();
    let mut einf = Vec::new();
    for k in 0..inj.len().max(totals.len()) {
        let (a, b) = (totals.get(k).copied().unwrap_or(0), inj.get(k).copied().unwrap_or(0));
        if a != b {
            einf.push(format!("k={k}: E_inf total {a}, H_k(Inj) rank {b}"));
        }
    }

    Ok(RmpssReport {
        ring: ring.to_string(),
        items: vec![
            item("page 1 equals eulerian magnitude homology", page1),
            item("page 2 diagonal equals regular path homology", page2),
            item("E_inf totals equal homology of injective words", einf),
        ],
        e_infinity: totals,
        collapse_page: seq.collapse_page(),
    })
}

/// Compares the regular sequence against the homology engine, the path
/// homology engine and the complex of injective words.
pub fn rmpss_report(g: &DirectedGraph, ring: Ring) -> Result<RmpssReport> {
    struct V<'a>(&'a DirectedGraph);
    impl FieldVisitor for V<'_> {
        type Output = Result<RmpssReport>;
        fn visit<F: Field>(self) -> Self::Output {
            rmpss_report_in::<F>(self.0)
        }
    }
    with_field(ring, V(g))?
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceVerdict {
    pub regular_path_homology: Vec<usize>,
    pub injective_words: Vec<usize>,
    pub agrees: bool,
}

/// For a connected regularly diagonal graph, regular path homology equals
/// the homology of the complex of injective words.
pub fn diagonal_convergence(g: &DirectedGraph, ring: Ring) -> Result<ConvergenceVerdict> {
    if !ring.is_field() {
        return Err(Error::invalid("diagonal convergence needs field coefficients"));
    }
    if !g.is_connected() {
        return Err(Error::precondition("graph is not connected"));
    }
    if !eulerian_homology(g, ring, "G")?.is_diagonal() {
        return Err(Error::precondition("graph is not regularly diagonal"));
    }
    struct V<'a>(&'a DirectedGraph);
    impl FieldVisitor for V<'_> {
        type Output = Result<Vec<usize>>;
        fn visit<F: Field>(self) -> Self::Output {
            Ok(path_homology::<F>(self.0, true, None)?.ranks)
        }
    }
    let mut rph = with_field(ring, V(g))??;
    let mut inj: Vec<usize> = simplicial_homology(&injective_words(g), ring)?
        .iter()
        .map(|h| h.free_rank)
        .collect();
    let len = rph.len().max(inj.len());
    rph.resize(len, 0);
    inj.resize(len, 0);
    Ok(ConvergenceVerdict {
        agrees: rph == inj,
        regular_path_homology: rph,
        injective_words: inj,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family, rho, s1, s2, FamilyName};
    use crate::linalg::rank;
    use crate::sparse::SparseMatrix;
    use crate::{Rational, F2};

    fn fam(f: FamilyName, n: usize) -> DirectedGraph {
        family(f, n).unwrap()
    }

    fn test_graphs() -> Vec<DirectedGraph> {
        vec![
            fam(FamilyName::Complete, 3),
            fam(FamilyName::Cycle, 4),
            fam(FamilyName::DirLinear, 4),
            fam(FamilyName::Tournament, 3),
            fam(FamilyName::DirCycle, 4),
            s1(),
            s2(),
        ]
    }

    #[test]
    fn complete_graph_pages() {
        let seq = regular_mpss::<Rational>(&fam(FamilyName::Complete, 3), 3);
        let emh = eulerian_homology(&fam(FamilyName::Complete, 3), Ring::Rationals, "K3").unwrap();
        for ((k, l), g) in emh.nonzero() {
            assert_eq!(seq.pages[0].rank(l, k), g.free_rank);
        }
        assert_eq!(seq.infinity.totals(), vec![1, 0, 2]);
        assert_eq!(seq.collapse_page(), Some(2));
    }

    #[test]
    fn one_step_filtration_collapses_immediately() {
        // an interval: two points and an edge, all in filtration 0
        let f = FilteredComplex {
            cells: vec![vec![vec![0], vec![1]], vec![vec![0, 1]]],
            filtration: vec![vec![0, 0], vec![0]],
            boundaries: vec![
                SparseMatrix::zeros(0, 2),
                SparseMatrix::from_triples(2, 1, vec![(0, 0, -1), (1, 0, 1)]),
            ],
            certified: true,
        };
        let seq = spectral_pages::<Rational>(&f, 2);
        assert_eq!(seq.pages[0].ranks, seq.infinity.ranks);
        assert_eq!(seq.infinity.totals(), vec![1]);
    }

    #[test]
    fn page_invariants() {
        for g in test_graphs() {
            let seq = regular_mpss::<Rational>(&g, 4);
            let chi = seq.pages[0].euler_characteristic();
            for w in seq.pages.windows(2) {
                let (p, q) = (&w[0], &w[1]);
                assert_eq!(q.euler_characteristic(), chi);
                for (&(l, k), &r) in &p.ranks {
                    assert!(q.rank(l, k) <= r);
                    // page r+1 is the homology of page r
                    let out = rank(&p.differential(l, k));
                    let inc = p.differentials.get(&(l + p.r as u32, k + 1)).map_or(0, rank);
                    assert_eq!(q.rank(l, k), r - out - inc, "r={} ({l},{k})", p.r);
                }
            }
            assert_eq!(seq.infinity.euler_characteristic(), chi);
        }
    }

    #[test]
    fn differentials_square_to_zero() {
        let seq = regular_mpss::<Rational>(&fam(FamilyName::Cycle, 4), 3);
        for p in &seq.pages {
            for (&(l, k), d) in &p.differentials {
                if let Some(next) = p.differentials.get(&(l - p.r as u32, k - 1)) {
                    assert!(next.mul(d).is_zero());
                }
            }
        }
    }

    #[test]
    fn rmpss_items_pass() {
        for g in test_graphs() {
            let report = rmpss_report(&g, Ring::Rationals).unwrap();
            assert!(report.passed(), "{report:?}");
        }
        let t3 = rmpss_report(&fam(FamilyName::Tournament, 3), Ring::Rationals).unwrap();
        assert_eq!(t3.e_infinity, vec![1]);
        assert!(rmpss_report(&rho(&fam(FamilyName::Complete, 3)), Ring::Prime(2)).unwrap().passed());
        assert!(rmpss_report(&s1(), Ring::Integers).is_err());
    }

    #[test]
    fn s1_and_s2_are_separated_by_page_one() {
        let a = regular_mpss::<Rational>(&s1(), 1);
        let b = regular_mpss::<Rational>(&s2(), 1);
        assert_eq!(a.pages[0].rank(3, 3), 2);
        assert_eq!(b.pages[0].rank(3, 3), 0);
        // S1 has a source reaching everything, so its complex is a cone
        assert_eq!(a.infinity.totals(), vec![1]);
        assert_eq!(b.infinity.totals(), vec![1, 0, 1]);
    }

    #[test]
    fn page_map_low_bidegrees() {
        let g = fam(FamilyName::Linear, 2);
        let pm = page_map::<Rational>(&g, 3, 2);
        assert!(pm.commutation_failures().is_empty());
        let m11 = pm.map(1, 1, 1).unwrap();
        assert_eq!(m11, &DenseMatrix::identity(2));
        let m22 = pm.map(1, 2, 2).unwrap();
        assert_eq!((m22.rows(), m22.cols()), (2, 0));

        let c4 = page_map::<F2>(&fam(FamilyName::Cycle, 4), 4, 2);
        assert!(c4.commutation_failures().is_empty());
    }

    #[test]
    fn convergence_for_diagonal_graphs() {
        let k4 = diagonal_convergence(&fam(FamilyName::Complete, 4), Ring::Rationals).unwrap();
        assert!(k4.agrees);
        assert_eq!(k4.regular_path_homology, vec![1, 0, 0, 9]);
        let tree = DirectedGraph::new(5, [(0, 1), (0, 2), (2, 3), (4, 2)]).unwrap();
        let v = diagonal_convergence(&tree, Ring::Rationals).unwrap();
        assert!(v.agrees);
        assert_eq!(v.injective_words.iter().sum::<usize>(), 1);
        assert!(diagonal_convergence(&fam(FamilyName::Tournament, 4), Ring::Rationals).unwrap().agrees);
        assert!(matches!(
            diagonal_convergence(&fam(FamilyName::Cycle, 5), Ring::Rationals),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn diagonal_graphs_collapse_at_page_two() {
        for g in [fam(FamilyName::Complete, 4), fam(FamilyName::Tournament, 3), s2()] {
            let seq = regular_mpss::<Rational>(&g, 3);
            assert!(seq.collapse_page().is_some_and(|r| r <= 2));
        }
    }

    #[test]
    fn page_dump_shape() {
        let seq = regular_mpss::<Rational>(&fam(FamilyName::DirLinear, 2), 1);
        let v = seq.to_json(true);
        assert_eq!(v[0]["r"], 1);
        assert_eq!(v[1]["r"], "inf");
        assert_eq!(v[0]["entries"][0], json!({"l": 0, "k": 0, "rank": 2}));
    }
}
