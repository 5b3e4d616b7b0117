//! Edge-list documents.
//!
//! ```text
//! # undirected        (or `# directed`; optionally `# directed n=5`)
//! % comment
//! a b                 one edge per line
//! c                   a lone label declares an isolated vertex
//! ```
//!
//! Without `n=` labels are arbitrary tokens mapped to `0..n` through a symbol
//! table (numeric labels in numeric order, then the rest lexicographically).
//! With `n=` every label must be an integer in `0..n`.

use std::collections::{BTreeMap, BTreeSet};

use super::DirectedGraph;
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<DirectedGraph> {
    parse_graph_with_labels(text).map(|(g, _)| g)
}

/// Parses a document and also returns the external label of every vertex.
pub fn parse_graph_with_labels(text: &str) -> Result<(DirectedGraph, Vec<String>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty document; expected `# directed` or `# undirected`".into(),
    })?;
    let mut tokens = header
        .strip_prefix('#')
        .ok_or_else(|| parse_err(hline, "expected header `# directed` or `# undirected`"))?
        .split_whitespace();
    let undirected = match tokens.next() {
        Some("directed") => false,
        Some("undirected") => true,
        _ => return Err(parse_err(hline, "expected header `# directed` or `# undirected`")),
    };
    let mut declared_n = None;
    for t in tokens {
        let n = t
            .strip_prefix("n=")
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(|| parse_err(hline, format!("unrecognized header token `{t}`")))?;
        declared_n = Some(n);
    }

    let mut raw: Vec<(usize, Vec<&str>)> = Vec::new();
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() > 2 {
            return Err(parse_err(line, format!("expected `u v`, found {} fields", fields.len())));
        }
        raw.push((line, fields));
    }

    let labels: Vec<String> = match declared_n {
        Some(n) => (0..n).map(|v| v.to_string()).collect(),
        None => {
            let set: BTreeSet<&str> = raw.iter().flat_map(|(_, f)| f.iter().copied()).collect();
            let mut v: Vec<&str> = set.into_iter().collect();
            v.sort_by_key(|s| (s.parse::<u64>().map_or(1, |_| 0), s.parse::<u64>().unwrap_or(0), s.to_string()));
            v.into_iter().map(String::from).collect()
        }
    };
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let lookup = |line: usize, tok: &str| -> Result<usize> {
        match declared_n {
            Some(n) => match tok.parse::<usize>() {
                Ok(v) if v < n => Ok(v),
                Ok(v) => Err(parse_err(line, format!("vertex {v} out of range 0..{n}"))),
                Err(_) => Err(parse_err(line, format!("vertex `{tok}` is not an integer"))),
            },
            None => Ok(index[tok]),
        }
    };

    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for (line, fields) in &raw {
        if fields.len() == 1 {
            lookup(*line, fields[0])?;
            continue;
        }
        let u = lookup(*line, fields[0])?;
        let v = lookup(*line, fields[1])?;
        if u == v {
            return Err(parse_err(*line, format!("self-loop at `{}`", fields[0])));
        }
        let key = if undirected { (u.min(v), u.max(v)) } else { (u, v) };
        if !seen.insert(key) {
            return Err(parse_err(*line, format!("duplicate edge `{} {}`", fields[0], fields[1])));
        }
        edges.push((u, v));
    }
    let n = labels.len();
    let g = if undirected {
        DirectedGraph::undirected(n, edges)?
    } else {
        DirectedGraph::new(n, edges)?
    };
    Ok((g, labels))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
