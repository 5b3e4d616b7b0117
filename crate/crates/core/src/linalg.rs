//! Dense exact linear algebra over a [`Field`].

use std::fmt;

use crate::scalar::Field;
use crate::sparse::SparseMatrix;

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_sparse(m: &SparseMatrix) -> Self {
        let mut d = Self::zeros(m.rows(), m.cols());
        for &(r, c, v) in m.entries() {
            d.set(r, c, F::from_i64(v));
        }
        d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn mul(&self, rhs: &DenseMatrix<F>) -> DenseMatrix<F> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a.clone() * b.clone());
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl<F: Field> fmt::Debug for DenseMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref<F: Field>(m: &mut DenseMatrix<F>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..m.cols {
                m.data.swap(p * m.cols + c, row * m.cols + c);
            }
        }
        let inv = m.get(row, col).inverse();
        for c in col..m.cols {
            let v = m.get(row, c).clone();
            if !v.is_zero() {
                m.set(row, c, v * inv.clone());
            }
        }
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let factor = m.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..m.cols {
                let pv = m.get(row, c).clone();
                if pv.is_zero() {
                    continue;
                }
                let cur = m.get(r, c).clone();
                m.set(r, c, cur - factor.clone() * pv);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &DenseMatrix<F>) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of the null space `{x : m x = 0}`.
pub fn kernel<F: Field>(m: &DenseMatrix<F>) -> Vec<Vec<F>> {
    let n = m.cols;
    if m.rows == 0 {
        return (0..n)
            .map(|j| {
                let mut e = vec![F::zero(); n];
                e[j] = F::one();
                e
            })
            .collect();
    }
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); n];
        v[free] = F::one();
        for (r, &p) in pivots.iter().enumerate() {
            let a = work.get(r, free);
            if !a.is_zero() {
                v[p] = -a.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Dimension of the span of a family of vectors.
pub fn span_dim<F: Field>(vectors: &[Vec<F>]) -> usize {
    let mut red = Reducer::new(0);
    vectors.iter().filter(|v| red.insert(v, None)).count()
}

/// Incremental echelon basis of a subspace.
///
/// Every stored row carries a label vector recording how it was combined from
/// labelled input vectors. Reducing a vector against the basis accumulates the
/// same combination, which gives coordinates with respect to a chosen
/// complement (see [`QuotientBasis`]).
#[derive(Clone, Debug)]
pub struct Reducer<F> {
    label_dim: usize,
    rows: Vec<(usize, Vec<F>, Vec<F>)>,
}

impl<F: Field> Reducer<F> {
    pub fn new(label_dim: usize) -> Self {
        Reducer {
            label_dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` and returns the remainder plus the accumulated label.
    pub fn reduce(&self, v: &[F]) -> (Vec<F>, Vec<F>) {
        let mut v = v.to_vec();
        let mut label = vec![F::zero(); self.label_dim];
        for (pivot, row, row_label) in &self.rows {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - c.clone() * r.clone();
                }
            }
            for (l, rl) in label.iter_mut().zip(row_label) {
                if !rl.is_zero() {
                    *l = l.clone() + c.clone() * rl.clone();
                }
            }
        }
        (v, label)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).0.iter().all(|x| x.is_zero())
    }

    /// Inserts `v` with an optional unit label index. Returns `true` if `v`
    /// was independent of the current span.
    pub fn insert(&mut self, v: &[F], label: Option<usize>) -> bool {
        let (mut rem, mut acc) = self.reduce(v);
        let Some(pivot) = rem.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        // rem = v - acc-combination, so its label is e_label - acc
        for a in acc.iter_mut() {
            *a = -a.clone();
        }
        if let Some(l) = label {
            acc[l] = acc[l].clone() + F::one();
        }
        let inv = rem[pivot].inverse();
        for x in rem.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for a in acc.iter_mut() {
            if !a.is_zero() {
                *a = a.clone() * inv.clone();
            }
        }
        self.rows.push((pivot, rem, acc));
        true
    }
}

/// A quotient `Z / D` with an explicit basis of representatives.
#[derive(Clone, Debug)]
pub struct QuotientBasis<F> {
    representatives: Vec<Vec<F>>,
    reducer: Reducer<F>,
}

impl<F: Field> QuotientBasis<F> {
    /// `denominator` must span a subspace of the span of `numerator`.
    pub fn new(numerator: &[Vec<F>], denominator: &[Vec<F>]) -> Self {
        let mut probe = Reducer::new(0);
        for d in denominator {
            probe.insert(d, None);
        }
        let representatives: Vec<Vec<F>> = numerator
            .iter()
            .filter(|z| probe.insert(z, None))
            .cloned()
            .collect();
        let mut reducer = Reducer::new(representatives.len());
        for d in denominator {
            reducer.insert(d, None);
        }
        for (i, r) in representatives.iter().enumerate() {
            reducer.insert(r, Some(i));
        }
        QuotientBasis {
            representatives,
            reducer,
        }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Vec<F>] {
        &self.representatives
    }

    /// Coordinates of the class of `v` in the representative basis, or `None`
    /// when `v` does not lie in the numerator.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let (rem, label) = self.reducer.reduce(v);
        rem.iter().all(|x| x.is_zero()).then_some(label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Zero;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn mat(rows: &[&[i64]]) -> DenseMatrix<Rational> {
        let cols: Vec<Vec<Rational>> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| q(r[c])).collect())
            .collect();
        DenseMatrix::from_columns(rows.len(), &cols)
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn empty_shapes() {
        let m: DenseMatrix<Rational> = DenseMatrix::zeros(0, 3);
        assert_eq!(rank(&m), 0);
        assert_eq!(kernel(&m).len(), 3);
        let m: DenseMatrix<Rational> = DenseMatrix::zeros(3, 0);
        assert!(kernel(&m).is_empty());
    }

    #[test]
    fn quotient_coordinates() {
        // Z = span(e0, e1, e2), D = span(e0 + e1)
        let e = |i: usize| {
            let mut v = vec![q(0); 3];
            v[i] = q(1);
            v
        };
        let z = vec![e(0), e(1), e(2)];
        let d = vec![vec![q(1), q(1), q(0)]];
        let qb = QuotientBasis::new(&z, &d);
        assert_eq!(qb.dim(), 2);
        // e1 = -e0 + (e0 + e1): its class equals minus the class of e0
        let c0 = qb.coordinates(&e(0)).unwrap();
        let c1 = qb.coordinates(&e(1)).unwrap();
        let sum: Vec<Rational> = c0.iter().zip(&c1).map(|(a, b)| a.clone() + b.clone()).collect();
        assert!(sum.iter().all(|x| x.is_zero()));
        assert!(qb.coordinates(&[q(1), q(1), q(0)]).unwrap().iter().all(|x| x.is_zero()));
    }
}
