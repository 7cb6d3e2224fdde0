//! Sparse vectors and row-major sparse matrices over a [`Scalar`] field.

use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Sparse vector: sorted column indices, no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        SparseVec { dim, entries: Vec::new() }
    }

    pub fn unit(dim: usize, i: usize, field: Field) -> Self {
        assert!(i < dim);
        SparseVec { dim, entries: vec![(i, field.one())] }
    }

    /// Builds from already sorted, zero-free entries.
    pub(crate) fn from_sorted(dim: usize, entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(i, x)| *i < dim && !x.is_zero()));
        SparseVec { dim, entries }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates and
    /// dropping zeros. Switches to a dense accumulator once the number of
    /// contributions exceeds half the dimension.
    pub fn from_unsorted(dim: usize, mut items: Vec<(usize, Scalar)>) -> Self {
        if items.is_empty() {
            return Self::zero(dim);
        }
        if items.len() * 2 > dim {
            let mut acc: Vec<Option<Scalar>> = vec![None; dim];
            for (i, x) in items {
                assert!(i < dim, "index {i} out of range {dim}");
                acc[i] = Some(match acc[i].take() {
                    Some(y) => y.add(&x),
                    None => x,
                });
            }
            let entries = acc
                .into_iter()
                .enumerate()
                .filter_map(|(i, x)| x.filter(|x| !x.is_zero()).map(|x| (i, x)))
                .collect();
            return SparseVec { dim, entries };
        }
        items.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(items.len());
        for (i, x) in items {
            assert!(i < dim, "index {i} out of range {dim}");
            match entries.last_mut() {
                Some((j, y)) if *j == i => *y = y.add(&x),
                _ => entries.push((i, x)),
            }
        }
        entries.retain(|(_, x)| !x.is_zero());
        SparseVec { dim, entries }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        SparseVec { dim: values.len(), entries }
    }

    pub fn to_dense(&self, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); self.dim];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, x)| (*i, x))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        let entries = self.entries.iter().map(|(i, x)| (*i, x.mul(c))).collect();
        SparseVec { dim: self.dim, entries }
    }

    /// `self + c * other`, merging the sorted supports.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> Self {
        assert_eq!(self.dim, other.dim, "vector dimension mismatch");
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, c.mul(&b[j].1)));
                j += 1;
            } else {
                let s = a[i].1.add(&c.mul(&b[j].1));
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { dim: self.dim, entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        match other.entries.first() {
            Some((_, x)) => self.axpy(&x.field().one(), other),
            None => self.clone(),
        }
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        match other.entries.first() {
            Some((_, x)) => self.axpy(&x.field().one().neg(), other),
            None => self.clone(),
        }
    }

    pub fn dot(&self, other: &SparseVec, field: Field) -> Scalar {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut acc = field.zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc = acc.add(&a[i].1.mul(&b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Reindexes into a space of dimension `dim` through `map`.
    pub fn remap(&self, dim: usize, map: impl Fn(usize) -> usize) -> Self {
        let items = self.entries.iter().map(|(i, x)| (map(*i), x.clone())).collect();
        Self::from_unsorted(dim, items)
    }

    pub fn promote(&self, field: Field) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|(i, x)| Ok((*i, x.promote(field)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseVec { dim: self.dim, entries })
    }

    /// `{linear_index: scalar-string}` map.
    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.entries.iter().map(|(i, x)| (i.to_string(), x.to_string())).collect()
    }
}

/// Row-major sparse matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix { nrows, ncols, rows: vec![SparseVec::zero(ncols); nrows] }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        Matrix { nrows: n, ncols: n, rows: (0..n).map(|i| SparseVec::unit(n, i, field)).collect() }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        assert!(rows.iter().all(|r| r.dim() == ncols), "row length mismatch");
        Matrix { nrows: rows.len(), ncols, rows }
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(ncols, rows.iter().map(|r| SparseVec::from_dense(r)).collect())
    }

    pub fn from_triplets(nrows: usize, ncols: usize, items: Vec<(usize, usize, Scalar)>) -> Self {
        let mut per_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nrows];
        for (r, c, x) in items {
            per_row[r].push((c, x));
        }
        let rows = per_row.into_iter().map(|v| SparseVec::from_unsorted(ncols, v)).collect();
        Matrix { nrows, ncols, rows }
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(nrows: usize, cols: &[SparseVec]) -> Self {
        let mut items = Vec::new();
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.dim(), nrows);
            for (i, x) in c.iter() {
                items.push((i, j, x.clone()));
            }
        }
        Self::from_triplets(nrows, cols.len(), items)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Scalar> {
        self.rows[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn transpose(&self) -> Matrix {
        let mut per_col: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.iter() {
                per_col[j].push((i, x.clone()));
            }
        }
        let rows = per_col.into_iter().map(|v| SparseVec::from_sorted(self.nrows, v)).collect();
        Matrix { nrows: self.ncols, ncols: self.nrows, rows }
    }

    /// Row vector times matrix: `sum_j v_j * row_j`.
    pub fn vec_mul(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(v.dim(), self.nrows, "vector dimension mismatch");
        let mut items = Vec::new();
        for (j, c) in v.iter() {
            for (k, x) in self.rows[j].iter() {
                items.push((k, c.mul(x)));
            }
        }
        SparseVec::from_unsorted(self.ncols, items)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(v.dim(), self.ncols, "vector dimension mismatch");
        if v.is_zero() {
            return SparseVec::zero(self.nrows);
        }
        let mut dense: Vec<Option<&Scalar>> = vec![None; self.ncols];
        for (j, x) in v.iter() {
            dense[j] = Some(x);
        }
        let mut entries = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc: Option<Scalar> = None;
            for (j, x) in r.iter() {
                if let Some(y) = dense[j] {
                    let p = x.mul(y);
                    acc = Some(match acc {
                        Some(a) => a.add(&p),
                        None => p,
                    });
                }
            }
            if let Some(a) = acc.filter(|a| !a.is_zero()) {
                entries.push((i, a));
            }
        }
        SparseVec::from_sorted(self.nrows, entries)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows, "matrix product shape mismatch");
        let rows = self.rows.iter().map(|r| other.vec_mul(r)).collect();
        Matrix { nrows: self.nrows, ncols: other.ncols, rows }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.add(b)).collect();
        Matrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.sub(b)).collect();
        Matrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let rows = self.rows.iter().map(|r| r.scale(c)).collect();
        Matrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn trace(&self, field: Field) -> Scalar {
        let mut acc = field.zero();
        for i in 0..self.nrows.min(self.ncols) {
            if let Some(x) = self.rows[i].get(i) {
                acc = acc.add(x);
            }
        }
        acc
    }

    pub fn column(&self, j: usize) -> SparseVec {
        let entries = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get(j).map(|x| (i, x.clone())))
            .collect();
        SparseVec::from_sorted(self.nrows, entries)
    }

    pub fn to_dense(&self, field: Field) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|r| r.to_dense(field)).collect()
    }

    /// Kronecker product, `self` acting on the major index.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r2, c2) = (other.nrows, other.ncols);
        let mut rows = Vec::with_capacity(self.nrows * r2);
        for a in &self.rows {
            for b in &other.rows {
                let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (j, y) in b.iter() {
                        entries.push((i * c2 + j, x.mul(y)));
                    }
                }
                rows.push(SparseVec::from_sorted(self.ncols * c2, entries));
            }
        }
        Matrix { nrows: self.nrows * r2, ncols: self.ncols * c2, rows }
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.ncols != other.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, got: other.ncols });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Matrix { nrows: self.nrows + other.nrows, ncols: self.ncols, rows })
    }

    pub fn promote(&self, field: Field) -> Result<Matrix> {
        let rows = self.rows.iter().map(|r| r.promote(field)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { nrows: self.nrows, ncols: self.ncols, rows })
    }

    /// Dense rows of scalar strings.
    pub fn to_strings(&self, field: Field) -> Vec<Vec<String>> {
        self.to_dense(field)
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_string()).collect())
            .collect()
    }
}
