//! Finite-rank associative unital algebras given by structure constants.

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, SparseVec, Subspace};

/// Coordinates of an algebra element in the chosen basis.
pub type Element = Vec<Scalar>;

/// `u_i u_j = sum_k c[i][j][k] u_k` over a base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAlgebra {
    name: String,
    field: Field,
    rank: usize,
    // table[i][j] holds the coordinates of u_i u_j
    table: Vec<Vec<SparseVec>>,
    unit: Element,
}

impl StructureAlgebra {
    /// Validates associativity on all basis triples and the unit on all
    /// basis elements.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Element,
    ) -> Result<Self> {
        let rank = unit.len();
        if rank == 0 {
            return Err(Error::MalformedSpec("rank must be positive".into()));
        }
        if table.len() != rank || table.iter().any(|row| row.len() != rank) {
            return Err(Error::MalformedSpec(format!("mul_table must be {rank}x{rank}x{rank}")));
        }
        for (i, row) in table.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.len() != rank {
                    return Err(Error::MalformedSpec(format!(
                        "mul_table[{i}][{j}] has length {}, expected {rank}",
                        c.len()
                    )));
                }
                if let Some(x) = c.iter().find(|x| !field.contains(x)) {
                    return Err(Error::FieldMismatch(format!("{x} is not in {field}")));
                }
            }
        }
        if let Some(x) = unit.iter().find(|x| !field.contains(x)) {
            return Err(Error::FieldMismatch(format!("{x} is not in {field}")));
        }
        let table = table
            .into_iter()
            .map(|row| row.into_iter().map(|c| SparseVec::from_dense(&c)).collect())
            .collect();
        let alg = StructureAlgebra { name: name.into(), field, rank, table, unit };
        alg.check_laws()?;
        Ok(alg)
    }

    /// Builds from a closure giving `u_i u_j` and skips validation; for
    /// families whose laws hold by construction (tests still verify them).
    pub(crate) fn from_fn(
        name: impl Into<String>,
        field: Field,
        rank: usize,
        unit: Element,
        mut product: impl FnMut(usize, usize) -> SparseVec,
    ) -> Self {
        let table = (0..rank).map(|i| (0..rank).map(|j| product(i, j)).collect()).collect();
        StructureAlgebra { name: name.into(), field, rank, table, unit }
    }

    fn check_laws(&self) -> Result<()> {
        let m = self.rank;
        for i in 0..m {
            let ui = self.basis_element(i);
            if self.mul(&self.unit, &ui) != ui || self.mul(&ui, &self.unit) != ui {
                return Err(Error::BadUnit(i));
            }
        }
        for i in 0..m {
            for j in 0..m {
                let ij = self.table[i][j].to_dense(self.field);
                for k in 0..m {
                    let left = self.mul(&ij, &self.basis_element(k));
                    let jk = self.table[j][k].to_dense(self.field);
                    let right = self.mul(&self.basis_element(i), &jk);
                    if left != right {
                        return Err(Error::NonAssociative { triple: (i, j, k) });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn one(&self) -> Element {
        self.unit.clone()
    }

    pub fn zero(&self) -> Element {
        vec![self.field.zero(); self.rank]
    }

    pub fn basis_element(&self, k: usize) -> Element {
        let mut e = self.zero();
        e[k] = self.field.one();
        e
    }

    /// Coordinates of `u_i u_j`.
    pub fn structure_constants(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn scalar(&self, c: &Scalar) -> Element {
        self.unit.iter().map(|u| u.mul(c)).collect()
    }

    pub fn add(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
    }

    pub fn sub(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
    }

    pub fn scale(&self, c: &Scalar, x: &[Scalar]) -> Element {
        x.iter().map(|a| a.mul(c)).collect()
    }

    pub fn is_zero(&self, x: &[Scalar]) -> bool {
        x.iter().all(|a| a.is_zero())
    }

    /// Bilinear product through the structure constants.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        assert_eq!(x.len(), self.rank, "element length mismatch");
        assert_eq!(y.len(), self.rank, "element length mismatch");
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                let c = xi.mul(yj);
                for (k, z) in self.table[i][j].iter() {
                    out[k] = out[k].add(&c.mul(z));
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[Scalar], e: usize) -> Element {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Matrix of `x -> a x` in the chosen basis (columns are images).
    pub fn left_regular_matrix(&self, a: &[Scalar]) -> Matrix {
        let m = self.rank;
        let mut items = Vec::new();
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for j in 0..m {
                for (k, z) in self.table[i][j].iter() {
                    items.push((k, j, ai.mul(z)));
                }
            }
        }
        Matrix::from_triplets(m, m, items)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.rank).all(|i| (0..self.rank).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Greedy algebra generating set drawn from the basis: `u_k` is kept
    /// whenever it is not already in the subalgebra generated by the earlier
    /// picks. Returns basis indices.
    pub fn generator_indices(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut sub = self.subalgebra(&gens);
        for k in 0..self.rank {
            if sub.rank() == self.rank {
                break;
            }
            if !sub.contains(&SparseVec::from_dense(&self.basis_element(k))) {
                gens.push(k);
                sub = self.subalgebra(&gens);
            }
        }
        gens
    }

    /// Unital subalgebra generated by the given basis elements.
    fn subalgebra(&self, gens: &[usize]) -> Subspace {
        let mut e = crate::linalg::Echelon::new(self.rank, self.field);
        let mut frontier: Vec<Element> = Vec::new();
        if e.insert(&SparseVec::from_dense(&self.unit)).is_some() {
            frontier.push(self.unit.clone());
        }
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(&self.basis_element(g), &x);
                if let Some(r) = e.insert(&SparseVec::from_dense(&y)) {
                    frontier.push(r.to_dense(self.field));
                }
            }
        }
        e.into_subspace()
    }

    /// Element with independent coordinates drawn uniformly from
    /// `-bound..=bound`.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R, bound: i64) -> Element {
        (0..self.rank).map(|_| self.field.from_i64(rng.gen_range(-bound..=bound))).collect()
    }

    /// The same structure constants over a larger field.
    pub fn promote(&self, field: Field) -> Result<Self> {
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|c| c.promote(field)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = self.unit.iter().map(|x| x.promote(field)).collect::<Result<Vec<_>>>()?;
        Ok(StructureAlgebra { name: self.name.clone(), field, rank: self.rank, table, unit })
    }

    /// Dense `mul_table[i][j][k]`.
    pub fn dense_table(&self) -> Vec<Vec<Vec<Scalar>>> {
        self.table
            .iter()
            .map(|row| row.iter().map(|c| c.to_dense(self.field)).collect())
            .collect()
    }
}
