//! Standard graph families, addressed by `name:params` strings.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{alternating, DirectedGraph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    /// `ρ(K_n)`.
    Complete,
    /// `ρ(C_n)`, `n ≥ 3`.
    Cycle,
    /// `ρ(I_n)`: the undirected path on `n` vertices.
    Linear,
    /// `L_n`: edges `(i, i+1)`.
    DirLinear,
    /// `T_n`: transitive tournament on `n + 1` vertices.
    Tournament,
    /// `BK_n = ρ(K_n)`.
    Bicomplete,
    /// Directed cycle `0 → 1 → … → n−1 → 0`.
    DirCycle,
    /// Undirected star `K_{1,n}` with centre 0.
    Star,
    /// `n` isolated vertices.
    Empty,
}

impl FamilyName {
    pub const ALL: [FamilyName; 9] = [
        FamilyName::Complete,
        FamilyName::Cycle,
        FamilyName::Linear,
        FamilyName::DirLinear,
        FamilyName::Tournament,
        FamilyName::Bicomplete,
        FamilyName::DirCycle,
        FamilyName::Star,
        FamilyName::Empty,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::Complete => "complete",
            FamilyName::Cycle => "cycle",
            FamilyName::Linear => "linear",
            FamilyName::DirLinear => "dir_linear",
            FamilyName::Tournament => "tournament",
            FamilyName::Bicomplete => "bicomplete",
            FamilyName::DirCycle => "dir_cycle",
            FamilyName::Star => "star",
            FamilyName::Empty => "empty",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown family `{s}`")))
    }
}

pub fn family(name: FamilyName, n: usize) -> Result<DirectedGraph> {
    if n == 0 {
        return Err(Error::invalid(format!("family {name} needs n >= 1")));
    }
    let g = match name {
        FamilyName::Complete | FamilyName::Bicomplete => {
            DirectedGraph::undirected(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))?
        }
        FamilyName::Cycle => {
            if n < 3 {
                return Err(Error::invalid("cycle needs n >= 3"));
            }
            DirectedGraph::undirected(n, (0..n).map(|i| (i, (i + 1) % n)))?
        }
        FamilyName::Linear => DirectedGraph::undirected(n, (1..n).map(|i| (i - 1, i)))?,
        FamilyName::DirLinear => DirectedGraph::new(n, (1..n).map(|i| (i - 1, i)))?,
        FamilyName::Tournament => {
            DirectedGraph::new(n + 1, (0..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))))?
        }
        FamilyName::DirCycle => {
            if n < 2 {
                return Err(Error::invalid("dir_cycle needs n >= 2"));
            }
            DirectedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?
        }
        FamilyName::Star => DirectedGraph::undirected(n + 1, (1..=n).map(|i| (0, i)))?,
        FamilyName::Empty => DirectedGraph::new(n, [])?.with_symmetric_flag(true),
    };
    Ok(g)
}

/// Four-vertex digraph whose complex of injective words is a double cone.
pub fn s1() -> DirectedGraph {
    DirectedGraph::new(4, [(0, 1), (0, 2), (1, 2), (2, 1), (2, 3), (1, 3)]).expect("valid edges")
}

/// Four-vertex digraph whose complex of injective words is a 2-sphere.
pub fn s2() -> DirectedGraph {
    DirectedGraph::new(4, [(0, 1), (0, 2), (1, 2), (2, 1), (3, 1), (3, 2)]).expect("valid edges")
}

/// Parses `name:params`. Besides [`FamilyName`] entries this accepts
/// `point`, `s1`, `s2`, `bipartite:a,b` (complete bipartite `K_{a,b}`) and
/// `alternating:a,b` (complete bipartite oriented from the `a` side).
pub fn parse_family(spec: &str) -> Result<DirectedGraph> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n.trim(), Some(p.trim())),
        None => (spec.trim(), None),
    };
    let count = |p: Option<&str>| -> Result<usize> {
        p.ok_or_else(|| Error::invalid(format!("family `{name}` needs a size, e.g. `{name}:4`")))?
            .parse::<usize>()
            .map_err(|_| Error::invalid(format!("bad size in `{spec}`")))
    };
    let pair = |p: Option<&str>| -> Result<(usize, usize)> {
        let p = p.ok_or_else(|| Error::invalid(format!("family `{name}` needs `a,b`")))?;
        let (a, b) = p
            .split_once(',')
            .ok_or_else(|| Error::invalid(format!("family `{name}` needs `a,b`")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::invalid(format!("bad size in `{spec}`")))
        };
        Ok((parse(a)?, parse(b)?))
    };
    match name {
        "point" => Ok(DirectedGraph::point()),
        "s1" => Ok(s1()),
        "s2" => Ok(s2()),
        "bipartite" => {
            let (a, b) = pair(params)?;
            complete_bipartite(a, b)
        }
        "alternating" => {
            let (a, b) = pair(params)?;
            let g = complete_bipartite(a, b)?;
            let first: Vec<usize> = (0..a).collect();
            alternating(&g, &first)
        }
        _ => family(name.parse()?, count(params)?),
    }
}

/// Seeded random digraph: each ordered pair becomes an edge with probability `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|_| rng.gen_bool(p))
        .collect();
    DirectedGraph::new(n, edges).expect("valid edges")
}

/// Seeded random tree, each vertex `v > 0` joined to an earlier vertex with a random orientation.
pub fn random_directed_tree(n: usize, seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (1..n)
        .map(|v| {
            let u = rng.gen_range(0..v);
            if rng.gen_bool(0.5) {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    DirectedGraph::new(n, edges).expect("valid edges")
}

fn complete_bipartite(a: usize, b: usize) -> Result<DirectedGraph> {
    if a == 0 || b == 0 {
        return Err(Error::invalid("bipartite needs both sides non-empty"));
    }
    DirectedGraph::undirected(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
}
