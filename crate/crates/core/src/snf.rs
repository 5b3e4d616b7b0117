//! Smith normal form of integer matrices.
//!
//! A sparse pre-pass eliminates unit pivots (the vast majority of entries of
//! magnitude boundary matrices are `±1`), then the remaining block is reduced
//! densely with minimal-magnitude pivot selection to limit coefficient growth.

use std::collections::{BTreeMap, BTreeSet};


use crate::scalar::EuclideanInteger;
use crate::sparse::SparseMatrix;

/// Invariant factors `d_1 | d_2 | ... | d_r` of a matrix, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub divisors: Vec<T>,
}

impl<T: EuclideanInteger> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Invariant factors larger than one.
    pub fn torsion(&self) -> Vec<T> {
        self.divisors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form<T: EuclideanInteger>(m: &SparseMatrix) -> SmithForm<T> {
    let mut rows: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); m.rows()];
    for &(r, c, v) in m.entries() {
        rows[r].insert(c, T::from(v));
    }
    reduce_sparse(rows, m.cols())
}

pub fn smith_normal_form_dense<T: EuclideanInteger>(m: &[Vec<T>]) -> SmithForm<T> {
    let cols = m.first().map_or(0, |r| r.len());
    let rows = m
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect()
        })
        .collect();
    reduce_sparse(rows, cols)
}

fn reduce_sparse<T: EuclideanInteger>(mut rows: Vec<BTreeMap<usize, T>>, ncols: usize) -> SmithForm<T> {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows[c].insert(r);
        }
    }
    let mut units = 0usize;
    let mut live_row = vec![true; rows.len()];
    let mut live_col = vec![true; ncols];

    loop {
        // unit pivot in the sparsest row
        let pivot = rows
            .iter()
            .enumerate()
            .filter(|(r, _)| live_row[*r])
            .filter_map(|(r, row)| {
                row.iter()
                    .find(|(_, v)| v.abs().is_one())
                    .map(|(&c, _)| (row.len(), r, c))
            })
            .min();
        let Some((_, pr, pc)) = pivot else { break };
        let pivot_row = rows[pr].clone();
        let pv = pivot_row[&pc].clone();
        let targets: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in targets {
            // row_r -= (a_rc / pv) * row_pr, with pv = ±1
            let factor = rows[r][&pc].clone() * pv.clone();
            for (&c, v) in &pivot_row {
                let entry = rows[r].entry(c).or_insert_with(T::zero);
                *entry = entry.clone() - factor.clone() * v.clone();
                if entry.is_zero() {
                    rows[r].remove(&c);
                    col_rows[c].remove(&r);
                } else {
                    col_rows[c].insert(r);
                }
            }
        }
        for &c in pivot_row.keys() {
            col_rows[c].remove(&pr);
        }
        rows[pr].clear();
        live_row[pr] = false;
        live_col[pc] = false;
        units += 1;
    }

    let rest_rows: Vec<usize> = (0..rows.len())
        .filter(|&r| live_row[r] && !rows[r].is_empty())
        .collect();
    let rest_cols: Vec<usize> = (0..ncols)
        .filter(|&c| live_col[c] && !col_rows[c].is_empty())
        .collect();
    let mut col_pos = vec![usize::MAX; ncols];
    for (j, &c) in rest_cols.iter().enumerate() {
        col_pos[c] = j;
    }
    let mut dense = vec![vec![T::zero(); rest_cols.len()]; rest_rows.len()];
    for (i, &r) in rest_rows.iter().enumerate() {
        for (&c, v) in &rows[r] {
            dense[i][col_pos[c]] = v.clone();
        }
    }

    let mut divisors: Vec<T> = std::iter::repeat_with(T::one).take(units).collect();
    divisors.extend(reduce_dense(dense));
    SmithForm { divisors }
}

/// Dense Smith reduction; returns the non-zero diagonal in divisibility order.
fn reduce_dense<T: EuclideanInteger>(mut a: Vec<Vec<T>>) -> Vec<T> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_entry(&a, t, t..m, t..n) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let pivot = a[t][t..n].to_vec();
                for (x, v) in a[i][t..n].iter_mut().zip(pivot) {
                    *x = x.clone() - q.clone() * v;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = row[t].clone();
                    row[j] = row[j].clone() - q.clone() * v;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                // a remainder smaller than the pivot survived; move it in
                let col_best = (t + 1..m)
                    .filter(|&i| !a[i][t].is_zero())
                    .map(|i| (a[i][t].abs(), i, t));
                let row_best = (t + 1..n)
                    .filter(|&j| !a[t][j].is_zero())
                    .map(|j| (a[t][j].abs(), t, j));
                let (_, bi, bj) = col_best
                    .chain(row_best)
                    .min_by(|x, y| x.0.cmp(&y.0))
                    .expect("dirty implies a remainder");
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                continue;
            }
            // divisibility of the trailing block by the pivot
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    let other = a[i][t..n].to_vec();
                    for (x, v) in a[t][t..n].iter_mut().zip(other) {
                        *x = x.clone() + v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

fn min_entry<T: EuclideanInteger>(
    a: &[Vec<T>],
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(T, usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = &a[i][j];
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            if best.as_ref().is_none_or(|(b, _, _)| mag < *b) {
                let unit = mag.is_one();
                best = Some((mag, i, j));
                if unit {
                    return best.map(|(_, i, j)| (i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}
