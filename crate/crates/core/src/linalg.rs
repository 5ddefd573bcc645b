//! Exact linear algebra over `Q(q)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::qfield::QScalar;

/// Sparse vector indexed by an ordered key.
pub type SparseRow<K> = BTreeMap<K, QScalar>;

/// Row echelon form where each row is monic on its largest key.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<SparseRow<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: Vec::new(), pivots: BTreeMap::new() }
    }
}

fn axpy<K: Ord + Clone>(row: &mut SparseRow<K>, other: &SparseRow<K>, c: &QScalar) {
    for (k, v) in other {
        let x = v * c;
        match row.get_mut(k) {
            Some(y) => {
                let s = &*y + &x;
                if s.is_zero() {
                    row.remove(k);
                } else {
                    *y = s;
                }
            }
            None => {
                if !x.is_zero() {
                    row.insert(k.clone(), x);
                }
            }
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<K>] {
        &self.rows
    }

    pub fn pivot_keys(&self) -> impl Iterator<Item = &K> + '_ {
        self.pivots.keys()
    }

    /// Eliminates pivot keys from `row`, largest first.
    pub fn reduce(&self, mut row: SparseRow<K>) -> SparseRow<K> {
        let mut bound: Option<K> = None;
        loop {
            let next = match &bound {
                None => row.iter().rev().find(|(k, _)| self.pivots.contains_key(*k)),
                Some(b) => row.range(..b.clone()).rev().find(|(k, _)| self.pivots.contains_key(*k)),
            }
            .map(|(k, v)| (k.clone(), v.clone()));
            let Some((k, v)) = next else { return row };
            let p = &self.rows[self.pivots[&k]];
            axpy(&mut row, p, &-v);
            bound = Some(k);
        }
    }

    /// Reduces and inserts; returns true when the row was independent.
    pub fn insert(&mut self, row: SparseRow<K>) -> bool {
        let mut r = self.reduce(row);
        let Some((k, lc)) = r.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) else {
            return false;
        };
        let inv = lc.inv().expect("non-zero leading coefficient");
        for v in r.values_mut() {
            *v = &*v * &inv;
        }
        self.pivots.insert(k, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Fully reduced echelon rows, ordered by ascending pivot.
    pub fn into_reduced(self) -> Vec<SparseRow<K>> {
        let order: Vec<usize> = self.pivots.values().copied().collect();
        let mut done = Echelon::<K>::new();
        let mut out = Vec::with_capacity(order.len());
        for idx in order {
            let row = self.rows[idx].clone();
            let lead = row.keys().next_back().cloned().expect("non-empty row");
            let lc = row[&lead].clone();
            let mut tail = row;
            tail.remove(&lead);
            let mut tail = done.reduce(tail);
            tail.insert(lead, lc);
            done.insert(tail.clone());
            out.push(tail);
        }
        out
    }
}

/// Dense matrix helpers on `Vec<Vec<QScalar>>` (row-major).
pub type DenseMatrix = Vec<Vec<QScalar>>;

pub fn dense_zero(rows: usize, cols: usize) -> DenseMatrix {
    vec![vec![QScalar::zero(); cols]; rows]
}

pub fn dense_identity(n: usize) -> DenseMatrix {
    let mut m = dense_zero(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = QScalar::one();
    }
    m
}

pub fn dense_mul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = dense_zero(n, m);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += &(aik * &b[k][j]);
                }
            }
        }
    }
    out
}

pub fn dense_rank(a: &DenseMatrix) -> usize {
    let mut e = Echelon::<usize>::new();
    for row in a {
        e.insert(to_sparse(row));
    }
    e.rank()
}

fn to_sparse(row: &[QScalar]) -> SparseRow<usize> {
    row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k, v.clone())).collect()
}

/// Basis of `{x : A x = 0}`.
pub fn dense_kernel(a: &DenseMatrix, ncols: usize) -> Vec<Vec<QScalar>> {
    let mut e = Echelon::<usize>::new();
    for row in a {
        e.insert(to_sparse(row));
    }
    let rows = e.into_reduced();
    let pivot_of: BTreeMap<usize, &SparseRow<usize>> =
        rows.iter().map(|r| (*r.keys().next_back().expect("row"), r)).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_of.contains_key(c)) {
        let mut v = vec![QScalar::zero(); ncols];
        v[free] = QScalar::one();
        for (&p, r) in &pivot_of {
            if let Some(c) = r.get(&free) {
                v[p] = -c;
            }
        }
        basis.push(v);
    }
    basis
}

/// Solves `A x = b`; returns one solution (free variables zero) or `None`.
pub fn dense_solve(a: &DenseMatrix, b: &[QScalar]) -> Option<Vec<QScalar>> {
    let ncols = a.first().map_or(0, Vec::len);
    // augmented column gets the smallest key so that pivots land on unknowns
    let mut e = Echelon::<usize>::new();
    for (row, rhs) in a.iter().zip(b) {
        let mut r = SparseRow::new();
        if !rhs.is_zero() {
            r.insert(0, rhs.clone());
        }
        for (k, v) in row.iter().enumerate() {
            if !v.is_zero() {
                r.insert(k + 1, v.clone());
            }
        }
        e.insert(r);
    }
    let rows = e.into_reduced();
    let mut x = vec![QScalar::zero(); ncols];
    for r in rows {
        let p = *r.keys().next_back().expect("row");
        if p == 0 {
            return None;
        }
        x[p - 1] = r.get(&0).cloned().unwrap_or_default();
    }
    Some(x)
}

pub fn dense_inverse(a: &DenseMatrix) -> Result<DenseMatrix> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![QScalar::zero(); n];
        e[j] = QScalar::one();
        let x = dense_solve(a, &e).ok_or_else(|| Error::Domain("singular matrix".into()))?;
        cols.push(x);
    }
    if dense_rank(a) < n {
        return Err(Error::Domain("singular matrix".into()));
    }
    let mut out = dense_zero(n, n);
    for (j, col) in cols.into_iter().enumerate() {
        for (i, v) in col.into_iter().enumerate() {
            out[i][j] = v;
        }
    }
    Ok(out)
}

/// Sparse matrix over `Q(q)` with explicit shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), QScalar>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| QScalar::one()).collect())
    }

    pub fn diagonal(d: Vec<QScalar>) -> Self {
        let n = d.len();
        let mut m = Self::zero(n, n);
        for (i, v) in d.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn from_dense(d: &DenseMatrix) -> Self {
        let cols = d.first().map_or(0, Vec::len);
        let mut m = Self::zero(d.len(), cols);
        for (i, row) in d.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = dense_zero(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> QScalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: QScalar) {
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &QScalar) {
        let x = &self.get(i, j) + v;
        self.set(i, j, x);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &QScalar)> + '_ {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    fn check_shape(&self, rows: usize, cols: usize) -> Result<()> {
        if self.rows != rows || self.cols != cols {
            return Err(Error::Domain(alloc::format!("shape {}x{} where {rows}x{cols} expected", self.rows, self.cols)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Domain(alloc::format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &QScalar)>> = BTreeMap::new();
        for (&(k, j), v) in &other.entries {
            by_row.entry(k).or_default().push((j, v));
        }
        let mut acc: BTreeMap<(usize, usize), QScalar> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    *acc.entry((i, j)).or_default() += &(a * b);
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, entries: acc })
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        other.check_shape(self.rows, self.cols)?;
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            out.add_at(i, j, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.add(&other.scale(&-QScalar::one()))
    }

    pub fn scale(&self, c: &QScalar) -> SparseMatrix {
        let mut out = Self::zero(self.rows, self.cols);
        if !c.is_zero() {
            for (&k, v) in &self.entries {
                out.entries.insert(k, v * c);
            }
        }
        out
    }

    /// Kronecker product; the left factor's index is the more significant.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = Self::zero(self.rows * other.rows, self.cols * other.cols);
        for (&(i, j), a) in &self.entries {
            for (&(k, l), b) in &other.entries {
                out.entries.insert((i * other.rows + k, j * other.cols + l), a * b);
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = Self::zero(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            out.entries.insert((j, i), v.clone());
        }
        out
    }

    pub fn trace(&self) -> QScalar {
        let mut t = QScalar::zero();
        for (&(i, j), v) in &self.entries {
            if i == j {
                t += v;
            }
        }
        t
    }

    pub fn apply(&self, v: &SparseRow<usize>) -> SparseRow<usize> {
        let mut out: SparseRow<usize> = BTreeMap::new();
        for (&(i, j), a) in &self.entries {
            if let Some(x) = v.get(&j) {
                *out.entry(i).or_default() += &(a * x);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `Some(c)` when the matrix is `c·I`.
    pub fn as_scalar(&self) -> Option<QScalar> {
        if self.rows != self.cols {
            return None;
        }
        let c = self.get(0, 0);
        let ok = self.entries.keys().all(|&(i, j)| i == j) && (0..self.rows).all(|i| self.get(i, i) == c);
        ok.then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64) -> QScalar {
        QScalar::from_int(x)
    }

    #[test]
    fn rank_and_kernel() {
        let q = QScalar::q();
        let a = vec![vec![s(1), q.clone(), s(0)], vec![q.clone(), &q * &q, s(0)], vec![s(0), s(0), s(1)]];
        assert_eq!(dense_rank(&a), 2);
        let k = dense_kernel(&a, 3);
        assert_eq!(k.len(), 1);
        let prod = dense_mul(&a, &k.iter().map(|v| v.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>()).next().unwrap());
        assert!(prod.iter().all(|r| r[0].is_zero()));
    }

    #[test]
    fn inverse_roundtrip() {
        let q = QScalar::q();
        let a = vec![vec![q.clone(), s(1)], vec![s(1), q.clone()]];
        let inv = dense_inverse(&a).unwrap();
        assert_eq!(dense_mul(&a, &inv), dense_identity(2));
        assert!(dense_inverse(&vec![vec![s(1), s(1)], vec![s(1), s(1)]]).is_err());
    }

    #[test]
    fn solve_inconsistent() {
        let a = vec![vec![s(1), s(1)], vec![s(1), s(1)]];
        assert!(dense_solve(&a, &[s(1), s(2)]).is_none());
        assert_eq!(dense_solve(&a, &[s(2), s(2)]).unwrap(), vec![s(0), s(2)]);
    }
}
