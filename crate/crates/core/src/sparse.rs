//! Sparse integer matrices in coordinate form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Integer matrix stored as `(row, col, value)` triples with non-zero values,
/// sorted by column then row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Builds a matrix from triples; duplicate positions are summed and zeros dropped.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc.entry((c, r)).or_insert(0) += v;
        }
        let entries = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((c, r), v)| (r, c, v))
            .collect();
        SparseMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries
            .binary_search_by(|&(er, ec, _)| (ec, er).cmp(&(c, r)))
            .map(|i| self.entries[i].2)
            .unwrap_or(0)
    }

    pub fn to_dense_i64(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            d[r][c] = v;
        }
        d
    }

    /// Product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.cols];
        for &(r, c, v) in &self.entries {
            by_row[c].push((r, v));
        }
        let triples = rhs.entries.iter().flat_map(|&(k, j, b)| {
            by_row[k].iter().map(move |&(i, a)| (i, j, a * b))
        });
        SparseMatrix::from_triples(self.rows, rhs.cols, triples.collect::<Vec<_>>())
    }

    /// Restriction to the given row and column index lists (in that order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_pos = vec![usize::MAX; self.rows];
        for (i, &r) in rows.iter().enumerate() {
            row_pos[r] = i;
        }
        let mut col_pos = vec![usize::MAX; self.cols];
        for (j, &c) in cols.iter().enumerate() {
            col_pos[c] = j;
        }
        let triples = self.entries.iter().filter_map(|&(r, c, v)| {
            let (i, j) = (row_pos[r], col_pos[c]);
            (i != usize::MAX && j != usize::MAX).then_some((i, j, v))
        });
        SparseMatrix::from_triples(rows.len(), cols.len(), triples.collect::<Vec<_>>())
    }

    /// Coordinate-list text dump: a `#` header line followed by `row col value` lines.
    pub fn to_coordinate_text(&self, header: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {header} rows={} cols={}", self.rows, self.cols);
        let mut sorted = self.entries.clone();
        sorted.sort();
        for (r, c, v) in sorted {
            let _ = writeln!(out, "{r} {c} {v}");
        }
        out
    }
}
