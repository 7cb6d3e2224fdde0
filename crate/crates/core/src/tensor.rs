//! The tensor power `A^{(x)n}` on big-endian multi-indices.
//!
//! Places are 0-based: place `i` is the i-th tensor factor from the left and
//! has stride `m^{n-1-i}` in the linear index.

use crate::algebra::{char_poly, DegreeStructure, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, SparseVec};
use crate::sym;

#[derive(Debug, Clone, Copy)]
pub struct TensorPower<'a> {
    alg: &'a StructureAlgebra,
    n: usize,
    m: usize,
    dim: usize,
}

impl<'a> TensorPower<'a> {
    pub fn new(alg: &'a StructureAlgebra, n: usize) -> Result<Self> {
        let m = alg.rank();
        let dim = u32::try_from(n)
            .ok()
            .and_then(|e| m.checked_pow(e))
            .ok_or(Error::DimensionGuardExceeded { dim: usize::MAX, cap: usize::MAX })?;
        Ok(TensorPower { alg, n, m, dim })
    }

    pub fn algebra(&self) -> &'a StructureAlgebra {
        self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn stride(&self, place: usize) -> usize {
        self.m.pow((self.n - 1 - place) as u32)
    }

    pub fn digits(&self, mut x: usize) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for i in (0..self.n).rev() {
            d[i] = x % self.m;
            x /= self.m;
        }
        d
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.m + d)
    }

    fn check_place(&self, place: usize) -> Result<()> {
        if place >= self.n {
            return Err(Error::IndexOutOfRange { index: place, n: self.n });
        }
        Ok(())
    }

    /// `v_0 (x) v_1 (x) .. (x) v_{n-1}`.
    pub fn pure_tensor(&self, factors: &[&[Scalar]]) -> SparseVec {
        assert_eq!(factors.len(), self.n);
        let mut entries: Vec<(usize, Scalar)> = vec![(0, self.field().one())];
        for f in factors {
            let nz: Vec<(usize, &Scalar)> = f.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            let mut next = Vec::with_capacity(entries.len() * nz.len());
            for (x, c) in &entries {
                for (d, y) in &nz {
                    next.push((x * self.m + d, c.mul(y)));
                }
            }
            entries = next;
        }
        // big-endian construction keeps the indices sorted
        SparseVec::from_unsorted(self.dim, entries)
    }

    pub fn unit_tensor(&self) -> SparseVec {
        let one = self.alg.one();
        self.pure_tensor(&vec![one.as_slice(); self.n])
    }

    /// `1 (x) .. (x) a (x) .. (x) 1` with `a` at `place`.
    pub fn place_embed(&self, a: &[Scalar], place: usize) -> Result<SparseVec> {
        self.check_place(place)?;
        let one = self.alg.one();
        let mut fs = vec![one.as_slice(); self.n];
        fs[place] = a;
        Ok(self.pure_tensor(&fs))
    }

    /// Left multiplication by `a` at `place`, as an `m^n x m^n` matrix.
    pub fn left_mul_operator(&self, a: &[Scalar], place: usize) -> Result<Matrix> {
        self.check_place(place)?;
        let lt = self.alg.left_regular_matrix(a).transpose();
        Ok(self.place_operator_transposed(&lt, place).transpose())
    }

    /// Transpose of the left multiplication by the element whose left-regular
    /// matrix has transpose `lt`; row x holds the image of basis vector x.
    pub(crate) fn place_operator_transposed(&self, lt: &Matrix, place: usize) -> Matrix {
        let s = self.stride(place);
        let rows = (0..self.dim)
            .map(|x| {
                let d = (x / s) % self.m;
                let base = x - d * s;
                let r = lt.row(d);
                SparseVec::from_unsorted(self.dim, r.iter().map(|(k, v)| (base + k * s, v.clone())).collect())
            })
            .collect();
        Matrix::from_rows(self.dim, rows)
    }

    /// Applies left multiplication at `place` given the transposed left-regular
    /// matrix of the element, without materializing the operator.
    pub fn apply_left_transposed(&self, lt: &Matrix, place: usize, v: &SparseVec) -> SparseVec {
        let s = self.stride(place);
        let mut items = Vec::new();
        for (x, c) in v.iter() {
            let d = (x / s) % self.m;
            let base = x - d * s;
            for (k, val) in lt.row(d).iter() {
                items.push((base + k * s, c.mul(val)));
            }
        }
        SparseVec::from_unsorted(self.dim, items)
    }

    pub fn apply_left(&self, a: &[Scalar], place: usize, v: &SparseVec) -> SparseVec {
        let lt = self.alg.left_regular_matrix(a).transpose();
        self.apply_left_transposed(&lt, place, v)
    }

    /// Image of basis index `x` under the factor permutation: the factor at
    /// position i moves to position `sigma[i]`.
    pub fn permute_index(&self, sigma: &[usize], x: usize) -> usize {
        let d = self.digits(x);
        let mut out = vec![0; self.n];
        for (i, &s) in sigma.iter().enumerate() {
            out[s] = d[i];
        }
        self.index(&out)
    }

    pub fn perm_operator(&self, sigma: &[usize]) -> Result<Matrix> {
        self.check_perm(sigma)?;
        let one = self.field().one();
        let items = (0..self.dim).map(|x| (self.permute_index(sigma, x), x, one.clone())).collect();
        Ok(Matrix::from_triplets(self.dim, self.dim, items))
    }

    pub fn apply_perm(&self, sigma: &[usize], v: &SparseVec) -> SparseVec {
        SparseVec::from_unsorted(self.dim, v.iter().map(|(x, c)| (self.permute_index(sigma, x), c.clone())).collect())
    }

    fn check_perm(&self, sigma: &[usize]) -> Result<()> {
        if sigma.len() != self.n {
            return Err(Error::InvalidPermutation(sigma.to_vec()));
        }
        sym::validate(sigma)
    }

    /// `e_j(a^(0), .., a^(n-1)) - s_j(a)` applied to the unit tensor, by the
    /// running recurrence `E_k <- E_k + a^(p) E_{k-1}` over places p.
    pub fn elem_sym_relation(&self, deg: &DegreeStructure, a: &[Scalar], j: usize) -> Result<SparseVec> {
        if j == 0 || j > self.n {
            return Err(Error::IndexOutOfRange { index: j, n: self.n });
        }
        if deg.degree() != self.n {
            return Err(Error::WrongDegree { expected: deg.degree(), got: self.n });
        }
        let s = char_poly(self.alg, deg, a)?.s(j);
        let unit = self.unit_tensor();
        let lt = self.alg.left_regular_matrix(a).transpose();
        let mut e: Vec<SparseVec> = vec![SparseVec::zero(self.dim); j + 1];
        e[0] = unit.clone();
        for p in 0..self.n {
            for k in (1..=j.min(p + 1)).rev() {
                let t = self.apply_left_transposed(&lt, p, &e[k - 1]);
                e[k] = e[k].add(&t);
            }
        }
        Ok(e[j].sub(&unit.scale(&s)))
    }
}
