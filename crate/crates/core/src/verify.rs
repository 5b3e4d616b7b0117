//! The reproduction suite: one check per acceptance criterion, each returning a
//! pass/fail verdict with details and timing.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::complex::{BigradedComplex, ChainKind};
use crate::error::{Error, Result};
use crate::graph::{
    cone, connected_graph_classes, family, girth, join, random_digraph, random_directed_tree, s1, s2, DirectedGraph,
    FamilyName,
};
use crate::homology::{eulerian_homology, les_verify, AbelianGroupInvariant, HomologyTable};
use crate::invariants::{decategorification, delta_distance, diagonality_sweep, magnitude_series, subgraph_network};
use crate::nerve::{injective_words, reduced_ranks, simplicial_homology};
use crate::path::path_homology;
use crate::scalar::Ring;
use crate::spectral::{page_map, rmpss_report};
use crate::Rational;

/// Check ids in suite order.
pub const CHECK_IDS: [&str; 14] = [
    "complete-ranks",
    "lower-triangular",
    "cycle-extremes",
    "short-cycle-vanishing",
    "charregdiag",
    "joins",
    "tournaments",
    "les",
    "rmpss",
    "derangements",
    "injective-words",
    "decategorification",
    "subgraph-network",
    "homotopy-witness",
];

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: &'static str,
    pub passed: bool,
    /// Failures first, then informational notes.
    pub details: Vec<String>,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.id).collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "passed": self.passed(),
            "failures": self.failures(),
            "checks": self.checks,
        })
    }
}

/// Accumulates failures and notes for one check.
#[derive(Default)]
struct Log {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Log {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn fam(f: FamilyName, n: usize) -> Result<DirectedGraph> {
    family(f, n)
}

/// Falling factorial `n (n-1) … (n-j+1)`.
pub fn falling(n: usize, j: usize) -> usize {
    if j > n {
        0
    } else {
        (n - j + 1..=n).product()
    }
}

/// Derangement count by inclusion-exclusion.
pub fn derangements(n: usize) -> usize {
    let mut total: i64 = 0;
    for i in 0..=n {
        let term = falling(n, n - i) as i64; // n!/i!
        total += if i % 2 == 0 { term } else { -term };
    }
    total as usize
}

fn complete_ranks(log: &mut Log) -> Result<()> {
    for n in 1..=5 {
        let t = eulerian_homology(&fam(FamilyName::Complete, n)?, Ring::Integers, "K")?;
        log.expect(t.is_diagonal(), format!("K_{n}: off-diagonal groups"));
        log.expect(!t.has_torsion(), format!("K_{n}: torsion"));
        for k in 0..n {
            let want = AbelianGroupInvariant::free(falling(n, k + 1));
            let got = t.get(k, k as u32);
            log.expect(got == want, format!("K_{n} at ({k},{k}): {got}, expected {want}"));
        }
    }
    Ok(())
}

fn lower_triangular(log: &mut Log) -> Result<()> {
    for seed in 0..50u64 {
        let n = 1 + (seed as usize % 6);
        let g = random_digraph(n, 0.45, 0x11a5 + seed);
        let c = BigradedComplex::build(&g, ChainKind::Eulerian, None)?;
        for (k, l) in c.bidegrees() {
            log.expect(k as u32 <= l, format!("seed {seed}: EMC_({k},{l}) nonzero"));
        }
        for t in (0..n).flat_map(|k| (0..k as u32).map(move |l| (k, l))) {
            log.expect(c.rank(t.0, t.1) == 0, format!("seed {seed}: rank at {t:?}"));
        }
    }
    Ok(())
}

fn cycle_extremes(log: &mut Log) -> Result<()> {
    for n in 3..=6usize {
        let t = eulerian_homology(&fam(FamilyName::Cycle, n)?, Ring::Integers, "C")?;
        let l = if n % 2 == 0 { n * n / 2 - n + 1 } else { (n - 1) * (n - 1) / 2 };
        let want = (n - 1, l as u32);
        log.expect(t.top_bidegree() == Some(want), format!("C_{n}: top {:?}, expected {want:?}", t.top_bidegree()));
    }
    let c3 = eulerian_homology(&fam(FamilyName::Cycle, 3)?, Ring::Integers, "C3")?;
    let c4 = eulerian_homology(&fam(FamilyName::Cycle, 4)?, Ring::Integers, "C4")?;
    log.expect(c3.get(2, 2) == AbelianGroupInvariant::free(6), format!("EMH_(2,2)(C_3) = {}", c3.get(2, 2)));
    log.expect(c4.get(2, 2) == AbelianGroupInvariant::free(4), format!("EMH_(2,2)(C_4) = {}", c4.get(2, 2)));
    Ok(())
}

fn short_cycle_vanishing(log: &mut Log) -> Result<()> {
    let mut tested = 0;
    for n in 1..=6 {
        for g in connected_graph_classes(n)? {
            if girth(&g)?.is_some_and(|x| x < 5) {
                continue;
            }
            tested += 1;
            let t = eulerian_homology(&g, Ring::Integers, "G")?;
            for k in 2..n {
                log.expect(t.get(k, k as u32).is_zero(), format!("{:?}: EMH_({k},{k}) = {}", g.undirected_edges(), t.get(k, k as u32)));
            }
        }
    }
    log.note(format!("{tested} graph classes with girth >= 5 or no cycle"));
    Ok(())
}

fn charregdiag(log: &mut Log) -> Result<()> {
    let mut total = 0;
    for n in 1..=5 {
        for row in diagonality_sweep(n)? {
            total += 1;
            log.expect(
                row.regularly_diagonal == row.complete,
                format!("{:?}: complete {} but regularly diagonal {}", row.edges, row.complete, row.regularly_diagonal),
            );
        }
    }
    log.note(format!("{total} connected classes on at most 5 vertices"));
    Ok(())
}

/// Ranks of the join from those of the factors: an augmented tensor product.
pub fn join_rank_formula(g: &HomologyTable, h: &HomologyTable, k: usize, l: u32) -> usize {
    let mut r = g.rank(k, l) + h.rank(k, l);
    for ((k1, l1), a) in g.nonzero() {
        for ((k2, l2), b) in h.nonzero() {
            if k1 + k2 + 1 == k && l1 + l2 + 1 == l {
                r += a.free_rank * b.free_rank;
            }
        }
    }
    r
}

fn joins(log: &mut Log) -> Result<()> {
    let named = [
        ("L_3", fam(FamilyName::DirLinear, 3)?),
        ("rho(I_3)", fam(FamilyName::Linear, 3)?),
        ("rho(K_3)", fam(FamilyName::Complete, 3)?),
        ("C_4-directed", fam(FamilyName::DirCycle, 4)?),
    ];
    let tables: Vec<HomologyTable> = named
        .iter()
        .map(|(n, g)| eulerian_homology(g, Ring::Integers, n))
        .collect::<Result<_>>()?;
    for ((name, g), t) in named.iter().zip(&tables) {
        let c = eulerian_homology(&cone(g), Ring::Integers, "cone")?;
        for k in 0..=g.n_vertices() {
            for l in 0..=c.l_max {
                let mut want = t.get(k, l);
                if (k, l) == (0, 0) {
                    want.free_rank += 1;
                } else if k > 0 && l > 0 {
                    let lower = t.get(k - 1, l - 1);
                    want.free_rank += lower.free_rank;
                    want.torsion.extend(lower.torsion);
                    want.torsion.sort_unstable();
                }
                let got = c.get(k, l);
                log.expect(got == want, format!("cone({name}) at ({k},{l}): {got}, expected {want}"));
            }
        }
    }
    for ((gn, g), gt) in named.iter().zip(&tables) {
        for ((hn, h), ht) in named.iter().zip(&tables) {
            let gh = join(g, h);
            let t = eulerian_homology(&gh, Ring::Rationals, "join")?;
            for k in 0..gh.n_vertices() {
                for l in 0..=t.l_max {
                    let want = join_rank_formula(gt, ht, k, l);
                    let got = t.rank(k, l);
                    log.expect(got == want, format!("{gn}*{hn} at ({k},{l}): {got}, expected {want}"));
                }
            }
        }
    }
    Ok(())
}

fn tournaments(log: &mut Log) -> Result<()> {
    let tables: Vec<HomologyTable> = (1..=5)
        .map(|n| eulerian_homology(&fam(FamilyName::Tournament, n)?, Ring::Integers, "T"))
        .collect::<Result<_>>()?;
    let rank = |n: usize, k: usize| tables[n - 1].rank(k, k as u32);
    for n in 1..=5 {
        let g = fam(FamilyName::Tournament, n)?;
        log.expect(rank(n, 0) == g.n_vertices(), format!("T_{n}: rank (0,0)"));
        log.expect(rank(n, 1) == g.edge_count(), format!("T_{n}: rank (1,1)"));
        log.expect(tables[n - 1].is_diagonal(), format!("T_{n}: not diagonal"));
        for k in 2..n {
            let sum: usize = (k - 1..n).map(|i| rank(i, k - 1)).sum();
            log.expect(rank(n, k) == sum, format!("T_{n} at ({k},{k}): {} vs recursion {sum}", rank(n, k)));
        }
        let closed: usize = (0..=n).map(|k| k * (n - k)).sum();
        log.expect(rank(n, 2) == closed, format!("T_{n} at (2,2): {} vs {closed}", rank(n, 2)));
    }
    Ok(())
}

fn les(log: &mut Log) -> Result<()> {
    let cases = [
        ("K_3", fam(FamilyName::Complete, 3)?, 2),
        ("C_4", fam(FamilyName::Cycle, 4)?, 3),
        ("C_4", fam(FamilyName::Cycle, 4)?, 5),
        ("T_3", fam(FamilyName::Tournament, 3)?, 2),
    ];
    for (name, g, l) in cases {
        let r = les_verify(&g, l)?;
        for p in r.failures() {
            log.expect(false, format!("{name}, l = {l}: not exact at {}", p.group));
        }
        log.note(format!("{name}, l = {l}: {} positions", r.positions.len()));
    }
    Ok(())
}

fn rmpss(log: &mut Log) -> Result<()> {
    let cases = [
        ("rho(K_3)", fam(FamilyName::Complete, 3)?),
        ("rho(K_4)", fam(FamilyName::Complete, 4)?),
        ("T_4", fam(FamilyName::Tournament, 4)?),
        ("L_4", fam(FamilyName::DirLinear, 4)?),
        ("C_4-directed", fam(FamilyName::DirCycle, 4)?),
        ("S_1", s1()),
        ("S_2", s2()),
    ];
    for (name, g) in cases {
        let r = rmpss_report(&g, Ring::Rationals)?;
        for item in &r.items {
            for m in &item.mismatches {
                log.expect(false, format!("{name}: {}: {m}", item.item));
            }
        }
        let pm = page_map::<Rational>(&g, 4, 2);
        for (r, l, k) in pm.commutation_failures() {
            log.expect(false, format!("{name}: page map does not commute on page {r} at ({l},{k})"));
        }
        log.note(format!("{name}: E_inf totals {:?}", r.e_infinity));
    }
    Ok(())
}

fn derangement_collapse(log: &mut Log) -> Result<()> {
    for n in 3..=4 {
        let h = path_homology::<Rational>(&fam(FamilyName::Complete, n)?, true, None)?;
        let mut want = vec![0; n];
        want[n - 1] = derangements(n);
        log.expect(h.reduced() == want, format!("rho(K_{n}): reduced RPH {:?}, expected {want:?}", h.reduced()));
    }
    let t5 = path_homology::<Rational>(&fam(FamilyName::Tournament, 5)?, true, None)?;
    log.expect(t5.is_reduced_trivial(), format!("T_5: reduced RPH {:?}", t5.reduced()));
    let tree = random_directed_tree(6, 0x7ee);
    let th = path_homology::<Rational>(&tree, true, None)?;
    log.expect(th.is_reduced_trivial(), format!("tree {:?}: reduced RPH {:?}", tree.to_edge_list(), th.reduced()));
    Ok(())
}

fn injective_word_homotopy(log: &mut Log) -> Result<()> {
    for n in 3..=4 {
        let h = simplicial_homology(&injective_words(&fam(FamilyName::Complete, n)?), Ring::Integers)?;
        let mut want = vec![0; n];
        want[n - 1] = derangements(n);
        log.expect(reduced_ranks(&h) == want, format!("Inj(BK_{n}): reduced {:?}, expected {want:?}", reduced_ranks(&h)));
        log.expect(h.iter().all(|g| g.torsion.is_empty()), format!("Inj(BK_{n}): torsion"));
    }
    let h = simplicial_homology(&injective_words(&fam(FamilyName::DirLinear, 3)?), Ring::Integers)?;
    log.expect(reduced_ranks(&h).iter().all(|&r| r == 0), "Inj(L_3) not acyclic");
    Ok(())
}

fn decategorification_check(log: &mut Log) -> Result<()> {
    let cases = [
        ("K_3", fam(FamilyName::Complete, 3)?),
        ("C_4", fam(FamilyName::Cycle, 4)?),
        ("L_4", fam(FamilyName::DirLinear, 4)?),
        ("T_3", fam(FamilyName::Tournament, 3)?),
        ("S_1", s1()),
    ];
    for (name, g) in cases {
        let d = decategorification(&g)?;
        log.expect(
            d.emh_alternating == d.regular_magnitude_at_minus_one,
            format!("{name}: sum (-1)^l chi = {}, #_r(-1) = {}", d.emh_alternating, d.regular_magnitude_at_minus_one),
        );
        log.expect(
            d.regular_magnitude_at_minus_one == d.injective_words_euler as i128,
            format!("{name}: #_r(-1) = {}, chi(Inj) = {}", d.regular_magnitude_at_minus_one, d.injective_words_euler),
        );
        log.note(format!("{name}: #_r(1) = {}, chi(Inj) = {}", d.regular_magnitude_at_one, d.injective_words_euler));
        let l = 6;
        log.note(format!("{name}: truncated magnitude at q = -1 up to q^{l}: {} (not asserted)", magnitude_series(&g, l)?.eval(-1)));
    }
    Ok(())
}

fn network(log: &mut Log) -> Result<()> {
    let star = fam(FamilyName::Star, 3)?;
    let c4 = fam(FamilyName::Cycle, 4)?;
    let d = delta_distance(&star, &c4)?;
    log.expect(d == 1, format!("Delta(K_1,3, C_4) = {d}"));
    let k4 = fam(FamilyName::Complete, 4)?;
    let net = subgraph_network(&k4)?;
    let diameter = net.diameter();
    log.expect(diameter == Some(3), format!("diameter(2^K_4) = {diameter:?}, expected 3"));
    log.expect(net.nodes.len() == 7, format!("2^K_4 has {} nodes, expected 7", net.nodes.len()));
    log.expect(net.is_connected(), "2^K_4 disconnected");
    log.note(format!("2^K_4: {} nodes, {} edges", net.nodes.len(), net.edge_count()));
    Ok(())
}

fn homotopy_witness(log: &mut Log) -> Result<()> {
    let k3 = path_homology::<Rational>(&fam(FamilyName::Complete, 3)?, true, None)?;
    log.expect(k3.rank(2) != 0, "RPH_2(rho(K_3)) vanishes");
    let point = path_homology::<Rational>(&DirectedGraph::point(), true, None)?;
    log.expect(point.is_reduced_trivial(), "RPH(point) not reduced-trivial");
    Ok(())
}

/// Runs one check by id.
pub fn run_check(id: &str) -> Result<CheckReport> {
    let Some(&id) = CHECK_IDS.iter().find(|&&c| c == id) else {
        return Err(Error::invalid(format!("unknown check `{id}`; known: {}", CHECK_IDS.join(", "))));
    };
    let start = Instant::now();
    let mut log = Log::default();
    let f: fn(&mut Log) -> Result<()> = match id {
        "complete-ranks" => complete_ranks,
        "lower-triangular" => lower_triangular,
        "cycle-extremes" => cycle_extremes,
        "short-cycle-vanishing" => short_cycle_vanishing,
        "charregdiag" => charregdiag,
        "joins" => joins,
        "tournaments" => tournaments,
        "les" => les,
        "rmpss" => rmpss,
        "derangements" => derangement_collapse,
        "injective-words" => injective_word_homotopy,
        "decategorification" => decategorification_check,
        "subgraph-network" => network,
        _ => homotopy_witness,
    };
    f(&mut log)?;
    let passed = log.failures.is_empty();
    let mut details = log.failures;
    details.extend(log.notes);
    Ok(CheckReport {
        id,
        passed,
        details,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Runs the whole suite, or only the listed checks.
pub fn run_suite(only: &[String]) -> Result<SuiteReport> {
    let ids: Vec<&str> = if only.is_empty() {
        CHECK_IDS.to_vec()
    } else {
        only.iter().map(String::as_str).collect()
    };
    let checks = ids.into_iter().map(run_check).collect::<Result<_>>()?;
    Ok(SuiteReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_helpers() {
        assert_eq!(falling(5, 0), 1);
        assert_eq!(falling(5, 2), 20);
        assert_eq!(falling(2, 3), 0);
        assert_eq!((0..=6).map(derangements).collect::<Vec<_>>(), vec![1, 0, 1, 2, 9, 44, 265]);
    }

    #[test]
    fn quick_checks_pass() {
        for id in ["complete-ranks", "tournaments", "homotopy-witness", "injective-words"] {
            let r = run_check(id).unwrap();
            assert!(r.passed, "{r:?}");
        }
        assert!(run_check("nope").is_err());
    }

    #[test]
    fn printed_join_sum_is_not_the_join() {
        // the single edge 0 -> 1 is the join of two points
        let p = eulerian_homology(&DirectedGraph::point(), Ring::Rationals, "pt").unwrap();
        let e = eulerian_homology(&join(&DirectedGraph::point(), &DirectedGraph::point()), Ring::Rationals, "e").unwrap();
        assert_eq!(join_rank_formula(&p, &p, 1, 1), e.rank(1, 1));
        // a plain sum of ranks over k1 + k2 + 1 = k would give 2 at (1,1)
        let printed: usize = (0..=0).map(|_| p.rank(0, 0) + p.rank(0, 0)).sum();
        assert_ne!(printed, e.rank(1, 1));
    }
}
