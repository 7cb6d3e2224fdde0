//! Canonical reduced row-echelon subspaces.
//!
//! Rows of an echelon basis have a leading 1 at their pivot column and zeros
//! in every other pivot column. Under that invariant, reducing a vector needs
//! only its original coordinates at the pivot columns, which is what makes
//! [`Echelon::reduce`] a single pass.

use super::scalar::{Field, Scalar};
use super::sparse::{Matrix, SparseVec};
use crate::error::{Error, Result};
use crate::par::Exec;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const NO_PIVOT: usize = usize::MAX;

fn reduce_with(rows: &[Option<SparseVec>], v: &SparseVec) -> SparseVec {
    let mut items = Vec::with_capacity(v.nnz());
    for (c, x) in v.iter() {
        match &rows[c] {
            Some(row) => {
                let neg = x.neg();
                for (k, y) in row.iter() {
                    if k != c {
                        items.push((k, neg.mul(y)));
                    }
                }
            }
            None => items.push((c, x.clone())),
        }
    }
    SparseVec::from_unsorted(v.dim(), items)
}

/// Incrementally built canonical echelon basis.
#[derive(Debug, Clone)]
pub struct Echelon {
    dim: usize,
    field: Field,
    // indexed by pivot column
    rows: Vec<Option<SparseVec>>,
    rank: usize,
    exec: Exec,
}

impl Echelon {
    pub fn new(dim: usize, field: Field) -> Self {
        Echelon { dim, field, rows: vec![None; dim], rank: 0, exec: Exec::Sequential }
    }

    /// Parallelizes back-elimination when a new pivot is inserted.
    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.dim
    }

    /// Canonical residue of `v` modulo the current span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(v.dim(), self.dim, "vector dimension mismatch");
        reduce_with(&self.rows, v)
    }

    /// Reduces and, if the residue is nonzero, inserts it. Returns the
    /// normalized row as inserted.
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let r = self.reduce(v);
        if r.is_zero() {
            None
        } else {
            Some(self.insert_reduced(r))
        }
    }

    /// Inserts a nonzero vector that is already reduced against this basis.
    pub fn insert_reduced(&mut self, r: SparseVec) -> SparseVec {
        let (p, lead) = r.leading().expect("inserting zero vector");
        debug_assert!(self.rows[p].is_none());
        let inv = lead.inv().expect("nonzero leading entry");
        let r = r.scale(&inv);
        let eliminate = |slot: &mut Option<SparseVec>| {
            if let Some(row) = slot {
                if let Some(c) = row.get(p) {
                    let c = c.neg();
                    *row = row.axpy(&c, &r);
                }
            }
        };
        #[cfg(feature = "parallel")]
        if self.exec.is_parallel() && self.rank >= 256 {
            self.rows.par_iter_mut().for_each(eliminate);
        } else {
            self.rows.iter_mut().for_each(eliminate);
        }
        #[cfg(not(feature = "parallel"))]
        self.rows.iter_mut().for_each(eliminate);
        self.rows[p] = Some(r.clone());
        self.rank += 1;
        r
    }

    pub fn into_subspace(self) -> Subspace {
        let mut pivots = Vec::with_capacity(self.rank);
        let mut rows = Vec::with_capacity(self.rank);
        let mut pivot_row = vec![NO_PIVOT; self.dim];
        for (c, slot) in self.rows.into_iter().enumerate() {
            if let Some(row) = slot {
                pivot_row[c] = rows.len();
                pivots.push(c);
                rows.push(row);
            }
        }
        Subspace { dim: self.dim, field: self.field, rows, pivots, pivot_row }
    }
}

/// A subspace of `field^dim` held as its canonical RREF basis. Two subspaces
/// are equal as sets iff they compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    dim: usize,
    field: Field,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: Vec<usize>,
}

impl Subspace {
    pub fn zero(dim: usize, field: Field) -> Self {
        Echelon::new(dim, field).into_subspace()
    }

    pub fn full(dim: usize, field: Field) -> Self {
        Self::span(dim, field, (0..dim).map(|i| SparseVec::unit(dim, i, field)))
    }

    pub fn span<I: IntoIterator<Item = SparseVec>>(dim: usize, field: Field, vectors: I) -> Self {
        let mut e = Echelon::new(dim, field);
        for v in vectors {
            if e.is_full() {
                break;
            }
            e.insert(&v);
        }
        e.into_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row[c] != NO_PIVOT
    }

    /// Row with pivot at column `c`.
    pub fn pivot_row(&self, c: usize) -> Option<&SparseVec> {
        match self.pivot_row[c] {
            NO_PIVOT => None,
            i => Some(&self.rows[i]),
        }
    }

    /// Columns without a pivot, increasing.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| !self.is_pivot(c)).collect()
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.dim, self.rows.clone())
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(v.dim(), self.dim, "vector dimension mismatch");
        let mut items = Vec::with_capacity(v.nnz());
        for (c, x) in v.iter() {
            match self.pivot_row(c) {
                Some(row) => {
                    let neg = x.neg();
                    for (k, y) in row.iter() {
                        if k != c {
                            items.push((k, neg.mul(y)));
                        }
                    }
                }
                None => items.push((c, x.clone())),
            }
        }
        SparseVec::from_unsorted(self.dim, items)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Coordinates of a member `v` in this basis (read off the pivots).
    pub fn coordinates(&self, v: &SparseVec) -> Vec<Scalar> {
        self.pivots
            .iter()
            .map(|&c| v.get(c).cloned().unwrap_or_else(|| self.field.zero()))
            .collect()
    }

    pub fn to_echelon(&self) -> Echelon {
        let mut rows = vec![None; self.dim];
        for (c, r) in self.pivots.iter().zip(&self.rows) {
            rows[*c] = Some(r.clone());
        }
        Echelon { dim: self.dim, field: self.field, rows, rank: self.rank(), exec: Exec::Sequential }
    }

    /// Image under a field inclusion. RREF is preserved by field extension,
    /// so the result is again canonical.
    pub fn promote(&self, field: Field) -> Result<Subspace> {
        let rows = self.rows.iter().map(|r| r.promote(field)).collect::<Result<Vec<_>>>()?;
        Ok(Subspace {
            dim: self.dim,
            field,
            rows,
            pivots: self.pivots.clone(),
            pivot_row: self.pivot_row.clone(),
        })
    }
}

/// Row space of `m` in canonical RREF.
pub fn rref(m: &Matrix, field: Field) -> Subspace {
    Subspace::span(m.ncols(), field, m.rows().iter().cloned())
}

pub fn reduce_against(s: &Subspace, v: &SparseVec) -> Result<SparseVec> {
    if v.dim() != s.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: s.ambient_dim(), got: v.dim() });
    }
    Ok(s.reduce(v))
}

/// Null space `{v : m v = 0}`.
pub fn kernel(m: &Matrix, field: Field) -> Subspace {
    let n = m.ncols();
    let rs = rref(m, field);
    let mut vectors = Vec::with_capacity(n - rs.rank());
    for f in rs.non_pivots() {
        let mut items = vec![(f, field.one())];
        for (c, row) in rs.pivots().iter().zip(rs.basis()) {
            if let Some(x) = row.get(f) {
                items.push((*c, x.neg()));
            }
        }
        vectors.push(SparseVec::from_unsorted(n, items));
    }
    Subspace::span(n, field, vectors)
}

/// `{v : M v = 0 for all M in ops}` for square operators of equal size.
pub fn intersect_kernels(ops: &[Matrix], field: Field) -> Result<Subspace> {
    let Some(first) = ops.first() else {
        return Err(Error::WrongShape("no operators given".into()));
    };
    let n = first.ncols();
    for op in ops {
        if !op.is_square() {
            return Err(Error::WrongShape(format!(
                "operator is {}x{}, expected square",
                op.nrows(),
                op.ncols()
            )));
        }
        if op.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: op.ncols() });
        }
    }
    let rows: Vec<SparseVec> = ops.iter().flat_map(|op| op.rows().iter().cloned()).collect();
    Ok(kernel(&Matrix::from_rows(n, rows), field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Scalar {
        Scalar::rational(n, 1)
    }

    fn vq(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    fn mq(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows[0].len(), rows.iter().map(|r| vq(r)).collect())
    }

    #[test]
    fn rref_dependent_rows() {
        let s = rref(&mq(&[&[2, 4], &[1, 2]]), Field::Rational);
        assert_eq!(s.basis(), &[vq(&[1, 2])]);
        assert_eq!(s.pivots(), &[0]);
    }

    #[test]
    fn rref_identity() {
        let s = rref(&mq(&[&[0, 1], &[1, 0]]), Field::Rational);
        assert_eq!(s.basis(), &[vq(&[1, 0]), vq(&[0, 1])]);
    }

    #[test]
    fn rref_over_f2() {
        let f = Field::prime(2).unwrap();
        let m = Matrix::from_dense(&[
            vec![f.one(), f.one()],
            vec![f.one(), f.from_i64(-1)],
        ]);
        let s = rref(&m, f);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.basis()[0].to_dense(f), vec![f.one(), f.one()]);
    }

    #[test]
    fn reduce_examples() {
        let s = rref(&mq(&[&[1, 0]]), Field::Rational);
        assert_eq!(reduce_against(&s, &vq(&[3, 5])).unwrap(), vq(&[0, 5]));
        let full = Subspace::full(2, Field::Rational);
        assert!(reduce_against(&full, &vq(&[7, -2])).unwrap().is_zero());
        let s = rref(&mq(&[&[1, 2]]), Field::Rational);
        assert_eq!(reduce_against(&s, &vq(&[1, 3])).unwrap(), vq(&[0, 1]));
        assert!(matches!(
            reduce_against(&s, &vq(&[1, 2, 3])),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn intersect_kernel_examples() {
        let f = Field::Rational;
        let zero = Matrix::zeros(3, 3);
        assert_eq!(intersect_kernels(&[zero], f).unwrap(), Subspace::full(3, f));
        let id = Matrix::identity(3, f);
        assert_eq!(intersect_kernels(&[id], f).unwrap().rank(), 0);
        let swap_minus_id = mq(&[&[-1, 1], &[1, -1]]);
        let k = intersect_kernels(&[swap_minus_id], f).unwrap();
        assert_eq!(k.basis(), &[vq(&[1, 1])]);
        assert!(intersect_kernels(&[Matrix::zeros(2, 3)], f).is_err());
        assert!(intersect_kernels(&[Matrix::zeros(2, 2), Matrix::zeros(3, 3)], f).is_err());
    }

    #[test]
    fn rank_nullity_all_3x3_over_f2() {
        let f = Field::prime(2).unwrap();
        for bits in 0u32..512 {
            let rows: Vec<Vec<Scalar>> = (0..3)
                .map(|i| (0..3).map(|j| f.from_i64(((bits >> (3 * i + j)) & 1) as i64)).collect())
                .collect();
            let m = Matrix::from_dense(&rows);
            let r = rref(&m, f).rank();
            let k = kernel(&m, f);
            assert_eq!(r + k.rank(), 3, "bits {bits:09b}");
            for v in k.basis() {
                assert!(m.mul_vec(v).is_zero());
            }
        }
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent_and_order_free(rows in small_matrix()) {
            let f = Field::Rational;
            let m = Matrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>());
            let s = rref(&m, f);
            prop_assert_eq!(&rref(&s.basis_matrix(), f), &s);
            let mut rev = m.rows().to_vec();
            rev.reverse();
            prop_assert_eq!(&Subspace::span(m.ncols(), f, rev), &s);
            for (c, row) in s.pivots().iter().zip(s.basis()) {
                prop_assert!(row.get(*c).unwrap().is_one());
                for c2 in s.pivots() {
                    if c2 != c { prop_assert!(row.get(*c2).is_none()); }
                }
            }
            prop_assert!(s.pivots().windows(2).all(|w| w[0] < w[1]));
            let k = kernel(&m, f);
            prop_assert_eq!(k.rank() + s.rank(), m.ncols());
        }

        #[test]
        fn residue_zero_iff_rank_unchanged(rows in small_matrix(), extra in prop::collection::vec(-3i64..4, 5)) {
            let f = Field::Rational;
            let m = Matrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>());
            let s = rref(&m, f);
            let v = vq(&extra[..m.ncols()]);
            let grown = Subspace::span(m.ncols(), f, s.basis().iter().cloned().chain([v.clone()]));
            prop_assert_eq!(s.reduce(&v).is_zero(), grown.rank() == s.rank());
        }
    }
}
