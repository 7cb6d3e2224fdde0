//! The Galois closure `G(A) = A^{(x)n} / I` with its descended actions.

use std::collections::{BTreeMap, VecDeque};
use std::time::Instant;

use crate::algebra::{DegreeStructure, Element, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Field, Matrix, Scalar, SparseVec, Subspace};
use crate::par::{self, Exec};
use crate::sym;
use crate::tensor::TensorPower;

pub const DEFAULT_DIM_CAP: usize = 100_000;

/// Rows of the worklist processed per parallel front.
const FRONT: usize = 32;

#[derive(Debug, Clone, Copy)]
pub struct ClosureOptions {
    pub exec: Exec,
    pub dim_cap: usize,
    pub force: bool,
    /// Re-check ideal stability under every place operator and adjacent
    /// transposition before descending.
    pub verify: bool,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions { exec: Exec::Parallel, dim_cap: DEFAULT_DIM_CAP, force: false, verify: true }
    }
}

impl ClosureOptions {
    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if dim > self.dim_cap && !self.force {
            return Err(Error::DimensionGuardExceeded { dim, cap: self.dim_cap });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Timings {
    pub saturate_ms: u128,
    pub verify_ms: u128,
    pub descend_ms: u128,
}

/// `eps_j(u_l)` for `j in 1..=n` and every basis element, in `(j, l)` order.
pub fn ideal_generators(alg: &StructureAlgebra, deg: &DegreeStructure) -> Result<Vec<SparseVec>> {
    let tp = TensorPower::new(alg, deg.degree())?;
    let mut out = Vec::with_capacity(deg.degree() * alg.rank());
    for j in 1..=deg.degree() {
        for l in 0..alg.rank() {
            out.push(tp.elem_sym_relation(deg, &alg.basis_element(l), j)?);
        }
    }
    Ok(out)
}

/// Place operators `(place, transposed left-regular matrix)` for a generating
/// set of the algebra, ordered by place then basis index.
fn saturation_operators(alg: &StructureAlgebra, n: usize) -> Vec<(usize, Matrix)> {
    let gens = alg.generator_indices();
    let mut ops = Vec::with_capacity(n * gens.len());
    for place in 0..n {
        for &k in &gens {
            ops.push((place, alg.left_regular_matrix(&alg.basis_element(k)).transpose()));
        }
    }
    ops
}

/// Smallest subspace containing `gens` and closed under left multiplication
/// at every place.
pub fn saturate_left_ideal(
    gens: &[SparseVec],
    alg: &StructureAlgebra,
    n: usize,
    opts: &ClosureOptions,
) -> Result<Subspace> {
    let tp = TensorPower::new(alg, n)?;
    opts.check_dim(tp.dim())?;
    let ops = saturation_operators(alg, n);
    Ok(saturate_with(&tp, &ops, gens, opts.exec))
}

fn saturate_with(tp: &TensorPower<'_>, ops: &[(usize, Matrix)], gens: &[SparseVec], exec: Exec) -> Subspace {
    let mut ech = Echelon::new(tp.dim(), tp.field()).with_exec(exec);
    let mut queue: VecDeque<SparseVec> = VecDeque::new();
    for g in gens {
        if let Some(r) = ech.insert(g) {
            queue.push_back(r);
        }
    }
    while !queue.is_empty() && !ech.is_full() {
        let front: Vec<SparseVec> = queue.drain(..queue.len().min(FRONT)).collect();
        let snapshot = &ech;
        let candidates: Vec<SparseVec> = par::map_range(exec, front.len() * ops.len(), |t| {
            let (row, (place, lt)) = (&front[t / ops.len()], &ops[t % ops.len()]);
            snapshot.reduce(&tp.apply_left_transposed(lt, *place, row))
        });
        for c in candidates {
            if c.is_zero() {
                continue;
            }
            let r = ech.reduce(&c);
            if !r.is_zero() {
                queue.push_back(ech.insert_reduced(r));
            }
        }
    }
    ech.into_subspace()
}

/// `A^{(x)n} / I` in the coordinates of the non-pivot columns of `I`.
#[derive(Debug, Clone)]
pub struct GaloisClosure {
    alg: StructureAlgebra,
    deg: DegreeStructure,
    ambient: usize,
    ideal: Subspace,
    // non-pivot columns, increasing
    quotient_cols: Vec<usize>,
    // ambient column -> quotient index, usize::MAX on pivots
    quotient_index: Vec<usize>,
    act: Vec<Vec<Matrix>>,
    sgen: Vec<Matrix>,
    pub timings: Timings,
}

pub fn galois_closure(alg: &StructureAlgebra, deg: &DegreeStructure) -> Result<GaloisClosure> {
    galois_closure_with(alg, deg, &ClosureOptions::default())
}

pub fn galois_closure_with(alg: &StructureAlgebra, deg: &DegreeStructure, opts: &ClosureOptions) -> Result<GaloisClosure> {
    deg.validate(alg)?;
    let n = deg.degree();
    let tp = TensorPower::new(alg, n)?;
    opts.check_dim(tp.dim())?;
    let mut timings = Timings::default();

    let t0 = Instant::now();
    let gens = ideal_generators(alg, deg)?;
    let ops = saturation_operators(alg, n);
    let ideal = saturate_with(&tp, &ops, &gens, opts.exec);
    timings.saturate_ms = t0.elapsed().as_millis();

    if opts.verify {
        let t1 = Instant::now();
        verify_stability(&tp, &ideal, opts.exec)?;
        timings.verify_ms = t1.elapsed().as_millis();
    }

    let t2 = Instant::now();
    let quotient_cols = ideal.non_pivots();
    let mut quotient_index = vec![usize::MAX; tp.dim()];
    for (t, &c) in quotient_cols.iter().enumerate() {
        quotient_index[c] = t;
    }
    let mut gc = GaloisClosure {
        alg: alg.clone(),
        deg: deg.clone(),
        ambient: tp.dim(),
        ideal,
        quotient_cols,
        quotient_index,
        act: Vec::new(),
        sgen: Vec::new(),
        timings: Timings::default(),
    };
    let m = alg.rank();
    let jobs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..m).map(move |k| (i, k))).collect();
    let mats = par::map(opts.exec, &jobs, |&(i, k)| {
        let lt = alg.left_regular_matrix(&alg.basis_element(k)).transpose();
        gc.descend(|v| tp.apply_left_transposed(&lt, i, v))
    });
    gc.act = mats.chunks(m).map(|c| c.to_vec()).collect();
    gc.sgen = par::map_range(opts.exec, n.saturating_sub(1), |t| {
        let s = sym::adjacent(n, t);
        gc.descend(|v| tp.apply_perm(&s, v))
    });
    timings.descend_ms = t2.elapsed().as_millis();
    gc.timings = timings;
    Ok(gc)
}

/// Every place operator `L(u_k, i)` and adjacent transposition maps every
/// ideal basis row back into the ideal.
fn verify_stability(tp: &TensorPower<'_>, ideal: &Subspace, exec: Exec) -> Result<()> {
    let alg = tp.algebra();
    let n = tp.n();
    let lts: Vec<Matrix> = (0..alg.rank()).map(|k| alg.left_regular_matrix(&alg.basis_element(k)).transpose()).collect();
    let rows = ideal.basis();
    let failures = par::map(exec, rows, |r| {
        for i in 0..n {
            for (k, lt) in lts.iter().enumerate() {
                if !ideal.contains(&tp.apply_left_transposed(lt, i, r)) {
                    return Some(format!("L(u{k}, {i})"));
                }
            }
        }
        for t in 0..n.saturating_sub(1) {
            if !ideal.contains(&tp.apply_perm(&sym::adjacent(n, t), r)) {
                return Some(format!("transposition ({t} {})", t + 1));
            }
        }
        None
    });
    match failures.into_iter().flatten().next() {
        Some(op) => Err(Error::IdealNotStable(op)),
        None => Ok(()),
    }
}

impl GaloisClosure {
    pub fn algebra(&self) -> &StructureAlgebra {
        &self.alg
    }

    pub fn degree_structure(&self) -> &DegreeStructure {
        &self.deg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn n(&self) -> usize {
        self.deg.degree()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.rank()
    }

    pub fn dim(&self) -> usize {
        self.quotient_cols.len()
    }

    pub fn tensor_power(&self) -> TensorPower<'_> {
        TensorPower::new(&self.alg, self.n()).expect("validated at construction")
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let r = self.ideal.reduce(v);
        SparseVec::from_unsorted(self.dim(), r.iter().map(|(c, x)| (self.quotient_index[c], x.clone())).collect())
    }

    /// Ambient representative of a quotient vector.
    pub fn lift(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_unsorted(self.ambient, v.iter().map(|(t, x)| (self.quotient_cols[t], x.clone())).collect())
    }

    /// `g x m^n` matrix of [`Self::project`].
    pub fn projection_matrix(&self) -> Matrix {
        let f = self.field();
        let cols: Vec<SparseVec> = (0..self.ambient).map(|c| self.project(&SparseVec::unit(self.ambient, c, f))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// `m^n x g` matrix of [`Self::lift`].
    pub fn lift_matrix(&self) -> Matrix {
        let f = self.field();
        let items = self.quotient_cols.iter().enumerate().map(|(t, &c)| (c, t, f.one())).collect();
        Matrix::from_triplets(self.ambient, self.dim(), items)
    }

    fn descend(&self, op: impl Fn(&SparseVec) -> SparseVec) -> Matrix {
        let f = self.field();
        let cols: Vec<SparseVec> =
            self.quotient_cols.iter().map(|&c| self.project(&op(&SparseVec::unit(self.ambient, c, f)))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Descended action of basis element `u_k` at `place`.
    pub fn act(&self, place: usize, k: usize) -> &Matrix {
        &self.act[place][k]
    }

    /// Descended action of an arbitrary element at `place`.
    pub fn act_elem(&self, place: usize, a: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (k, c) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out = out.add(&self.act[place][k].scale(c));
        }
        out
    }

    /// Descended adjacent transposition `(t, t+1)`.
    pub fn sgen(&self, t: usize) -> &Matrix {
        &self.sgen[t]
    }

    pub fn sgens(&self) -> &[Matrix] {
        &self.sgen
    }

    /// Descended action of an arbitrary permutation.
    pub fn perm(&self, sigma: &[usize]) -> Result<Matrix> {
        let tp = self.tensor_power();
        sym::validate(sigma)?;
        if sigma.len() != self.n() {
            return Err(Error::InvalidPermutation(sigma.to_vec()));
        }
        Ok(self.descend(|v| tp.apply_perm(sigma, v)))
    }

    /// Product of descended adjacent transpositions along `word`.
    pub fn word_matrix(&self, word: &[usize]) -> Matrix {
        word.iter().fold(Matrix::identity(self.dim(), self.field()), |acc, &t| acc.mul(&self.sgen[t]))
    }

    /// `eps_j(a)` lies in the ideal.
    pub fn verify_membership(&self, a: &[Scalar], j: usize) -> Result<bool> {
        let r = self.tensor_power().elem_sym_relation(&self.deg, a, j)?;
        Ok(self.ideal.contains(&r))
    }
}

/// Trace of the descended S_n action on one representative per cycle type,
/// keyed like `"2,1"`.
pub fn sn_character(gc: &GaloisClosure) -> BTreeMap<String, Scalar> {
    sym::partitions(gc.n())
        .into_iter()
        .map(|p| (sym::partition_key(&p), gc.word_matrix(&sym::representative_word(&p)).trace(gc.field())))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseChangeReport {
    pub base_field: Field,
    pub ext_field: Field,
    pub dim_base: usize,
    pub dim_ext: usize,
    pub ideal_span_equal: bool,
}

impl BaseChangeReport {
    pub fn passed(&self) -> bool {
        self.dim_base == self.dim_ext && self.ideal_span_equal
    }
}

/// Compares the closure over the base field with the closure of the base
/// change, including equality of the promoted ideal with the ideal computed
/// over the extension.
pub fn base_change_check(
    alg: &StructureAlgebra,
    deg: &DegreeStructure,
    ext: Field,
    opts: &ClosureOptions,
) -> Result<BaseChangeReport> {
    let base = alg.field();
    let supported = base == ext || (base == Field::Rational && matches!(ext, Field::Quadratic { .. }));
    if !supported {
        return Err(Error::UnsupportedExtension(format!("{base} -> {ext}")));
    }
    let alg_s = alg.promote(ext)?;
    let deg_s = deg.promote(ext)?;
    let gc = galois_closure_with(alg, deg, opts)?;
    let gc_s = galois_closure_with(&alg_s, &deg_s, opts)?;
    Ok(BaseChangeReport {
        base_field: base,
        ext_field: ext,
        dim_base: gc.dim(),
        dim_ext: gc_s.dim(),
        ideal_span_equal: gc.ideal().promote(ext)? == *gc_s.ideal(),
    })
}

/// Convenience used by verifiers: `eps_j(a)` as an ambient vector.
pub fn relation(gc: &GaloisClosure, a: &Element, j: usize) -> Result<SparseVec> {
    gc.tensor_power().elem_sym_relation(gc.degree_structure(), a, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual, matrix, product_algebra, quadratic, split, trivial};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Scalar {
        Scalar::rational(n, 1)
    }

    #[test]
    fn generators_examples() {
        let f = Field::Rational;
        let (a, d) = trivial(f, 3);
        assert!(ideal_generators(&a, &d).unwrap().iter().all(|g| g.is_zero()));
        let (a, d) = split(f, 2);
        let g = ideal_generators(&a, &d).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(Subspace::span(4, f, g).rank(), 2);
        let (a, d) = matrix(f, 2);
        assert_eq!(ideal_generators(&a, &d).unwrap().len(), 8);
    }

    #[test]
    fn saturation_examples() {
        let f = Field::Rational;
        let opts = ClosureOptions::default();
        let (a, _) = split(f, 2);
        assert_eq!(saturate_left_ideal(&[], &a, 2, &opts).unwrap().rank(), 0);
        let (a, d) = split(f, 3);
        let s = saturate_left_ideal(&ideal_generators(&a, &d).unwrap(), &a, 3, &opts).unwrap();
        assert_eq!(s.rank(), 21);
        let (a, d) = matrix(f, 2);
        let s = saturate_left_ideal(&ideal_generators(&a, &d).unwrap(), &a, 2, &opts).unwrap();
        assert_eq!(s.rank(), 12);
    }

    #[test]
    fn dimension_guard() {
        let (a, d) = matrix(Field::Rational, 3);
        let opts = ClosureOptions { dim_cap: 100, ..Default::default() };
        assert_eq!(
            galois_closure_with(&a, &d, &opts).unwrap_err(),
            Error::DimensionGuardExceeded { dim: 729, cap: 100 }
        );
    }

    #[test]
    fn trivial_closure() {
        let (a, d) = trivial(Field::Rational, 4);
        let gc = galois_closure(&a, &d).unwrap();
        assert_eq!(gc.dim(), 1);
        for t in 0..3 {
            assert_eq!(*gc.sgen(t), Matrix::identity(1, Field::Rational));
        }
        let ch = sn_character(&gc);
        assert!(ch.values().all(|v| *v == q(1)));
        assert_eq!(gc.act_elem(2, &[q(7)]), Matrix::identity(1, Field::Rational).scale(&q(7)));
    }

    #[test]
    fn small_dimensions() {
        let f = Field::Rational;
        let cases: Vec<((StructureAlgebra, DegreeStructure), usize)> = vec![
            (quadratic(f, 2), 2),
            (quadratic(f, -1), 2),
            (dual(f), 2),
            (split(f, 2), 2),
            (matrix(f, 2), 4),
            (split(f, 3), 6),
            (product_algebra(vec![trivial(f, 1), quadratic(f, 2)]).unwrap(), 6),
            (product_algebra(vec![trivial(f, 1), dual(f)]).unwrap(), 6),
        ];
        for ((a, d), expect) in cases {
            let gc = galois_closure(&a, &d).unwrap();
            assert_eq!(gc.dim(), expect, "{}", a.name());
            assert_eq!(gc.ambient_dim(), gc.ideal_dim() + gc.dim());
        }
    }

    #[test]
    fn characters() {
        let f = Field::Rational;
        let (a, d) = split(f, 3);
        let ch = sn_character(&galois_closure(&a, &d).unwrap());
        assert_eq!(ch["1,1,1"], q(6));
        assert_eq!(ch["2,1"], q(0));
        assert_eq!(ch["3"], q(0));
        let (a, d) = matrix(f, 2);
        let ch = sn_character(&galois_closure(&a, &d).unwrap());
        assert_eq!(ch["1,1"], q(4));
        assert_eq!(ch["2"], q(-2));
    }

    #[test]
    fn projection_and_lift() {
        let (a, d) = matrix(Field::Rational, 2);
        let gc = galois_closure(&a, &d).unwrap();
        let p = gc.projection_matrix();
        let l = gc.lift_matrix();
        assert_eq!(p.mul(&l), Matrix::identity(gc.dim(), Field::Rational));
        for r in gc.ideal().basis() {
            assert!(p.mul_vec(r).is_zero());
        }
    }

    #[test]
    fn membership() {
        let f = Field::Rational;
        let (a, d) = split(f, 2);
        let gc = galois_closure(&a, &d).unwrap();
        assert!(gc.verify_membership(&[q(2), q(3)], 2).unwrap());
        let (a, d) = matrix(f, 2);
        let gc = galois_closure(&a, &d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            let x = a.random_element(&mut rng, 5);
            assert!(gc.verify_membership(&x, 1).unwrap());
            assert!(gc.verify_membership(&x, 2).unwrap());
        }
        for k in 0..4 {
            assert!(gc.verify_membership(&a.basis_element(k), 2).unwrap());
        }
    }

    #[test]
    fn sequential_matches_parallel() {
        let (a, d) = split(Field::Rational, 4);
        let seq = galois_closure_with(&a, &d, &ClosureOptions::default().with_exec(Exec::Sequential)).unwrap();
        let par = galois_closure_with(&a, &d, &ClosureOptions::default()).unwrap();
        assert_eq!(seq.dim(), 24);
        assert_eq!(seq.ideal(), par.ideal());
        assert_eq!(seq.sgens(), par.sgens());
    }

    #[test]
    fn base_change_small() {
        let f = Field::Rational;
        let (a, d) = quadratic(f, 2);
        let r = base_change_check(&a, &d, Field::quadratic(2).unwrap(), &ClosureOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!((r.dim_base, r.dim_ext), (2, 2));
        let (a, d) = trivial(f, 3);
        assert!(base_change_check(&a, &d, Field::quadratic(5).unwrap(), &ClosureOptions::default()).unwrap().passed());
        assert!(matches!(
            base_change_check(&a, &d, Field::prime(5).unwrap(), &ClosureOptions::default()),
            Err(Error::UnsupportedExtension(_))
        ));
    }
}
