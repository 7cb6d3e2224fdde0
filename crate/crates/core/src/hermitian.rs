//! Hermitian spaces `H_{A,U}` inside `G(A) (x) U^{(x)n}` and the action of
//! `Mat_m(A)` on them.
//!
//! Ambient coordinates are closure-major: index `q * m^n + u` with `q` a
//! closure coordinate and `u` a big-endian multi-index into `U^{(x)n}`.
//!
//! `H` is the invariant space of the diagonal S_n action
//! `D(sigma) = sigma_G (x) P_U(sigma)`. The two actions commute, so `D` is a
//! homomorphism and fixing `D(t)` for the adjacent transpositions fixes all
//! of S_n. For a transposition `t = t^{-1}`, so `D(t) x = x` is exactly the
//! condition that the two actions agree on `t`.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::algebra::{parse_preset, Element, Graded};
use crate::closure::{galois_closure_with, ClosureOptions, GaloisClosure};
use crate::error::{Error, Result};
use crate::iso::{CheckOptions, IsoReport};
use crate::linalg::{intersect_kernels, Field, Matrix, Scalar, SparseVec, Subspace};
use crate::sym;

#[derive(Debug, Clone)]
pub struct HermitianSpace<'a> {
    gc: &'a GaloisClosure,
    m: usize,
    ambient: usize,
    space: Subspace,
}

fn upow(m: usize, n: usize) -> Result<usize> {
    m.checked_pow(n as u32).ok_or(Error::DimensionGuardExceeded { dim: usize::MAX, cap: usize::MAX })
}

fn u_digits(m: usize, n: usize, mut x: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for k in (0..n).rev() {
        d[k] = x % m;
        x /= m;
    }
    d
}

fn u_index(m: usize, d: &[usize]) -> usize {
    d.iter().fold(0, |acc, &k| acc * m + k)
}

/// Permutation of the factors of `U^{(x)n}`, moving factor `i` to `sigma(i)`.
pub fn u_perm(m: usize, n: usize, sigma: &[usize], field: Field) -> Result<Matrix> {
    sym::validate(sigma)?;
    if sigma.len() != n {
        return Err(Error::InvalidPermutation(sigma.to_vec()));
    }
    let dim = upow(m, n)?;
    let items = (0..dim)
        .map(|x| {
            let d = u_digits(m, n, x);
            let mut e = vec![0; n];
            for i in 0..n {
                e[sigma[i]] = d[i];
            }
            (u_index(m, &e), x, field.one())
        })
        .collect();
    Ok(Matrix::from_triplets(dim, dim, items))
}

/// `D(t) = sgen(t) (x) P_U(t)` on the ambient space.
pub fn diagonal_generator(gc: &GaloisClosure, m: usize, t: usize) -> Result<Matrix> {
    let n = gc.n();
    Ok(gc.sgen(t).kron(&u_perm(m, n, &sym::adjacent(n, t), gc.field())?))
}

/// `sgen(t) (x) 1` and `1 (x) P_U(t)`: the two S_n actions separately.
pub fn separate_generators(gc: &GaloisClosure, m: usize, t: usize) -> Result<(Matrix, Matrix)> {
    let n = gc.n();
    let f = gc.field();
    let p = u_perm(m, n, &sym::adjacent(n, t), f)?;
    Ok((gc.sgen(t).kron(&Matrix::identity(p.nrows(), f)), Matrix::identity(gc.dim(), f).kron(&p)))
}

pub fn hermitian_space<'a>(gc: &'a GaloisClosure, m: usize, opts: &ClosureOptions) -> Result<HermitianSpace<'a>> {
    if m == 0 {
        return Err(Error::WrongShape("U must have rank at least 1".into()));
    }
    let n = gc.n();
    let f = gc.field();
    let ambient = upow(m, n)?.checked_mul(gc.dim()).ok_or(Error::DimensionGuardExceeded { dim: usize::MAX, cap: opts.dim_cap })?;
    opts.check_dim(ambient)?;
    let space = if n < 2 {
        Subspace::full(ambient, f)
    } else {
        let id = Matrix::identity(ambient, f);
        let ops = (0..n - 1).map(|t| Ok(diagonal_generator(gc, m, t)?.sub(&id))).collect::<Result<Vec<_>>>()?;
        intersect_kernels(&ops, f)?
    };
    Ok(HermitianSpace { gc, m, ambient, space })
}

impl<'a> HermitianSpace<'a> {
    pub fn closure(&self) -> &'a GaloisClosure {
        self.gc
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.space.rank()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.space.contains(v)
    }

    /// Trace of `op` restricted to `H`, or `None` if `op` does not preserve `H`.
    pub fn restricted_trace(&self, op: &Matrix) -> Option<Scalar> {
        let f = self.gc.field();
        let mut tr = f.zero();
        for (i, b) in self.space.basis().iter().enumerate() {
            let img = op.mul_vec(b);
            if !self.space.contains(&img) {
                return None;
            }
            tr = tr.add(&self.space.coordinates(&img)[i]);
        }
        Some(tr)
    }
}

/// The operator `(gamma M)_{i} = sum_j (gamma_{i1 j1} (x) .. (x) gamma_{in jn}) M_j`
/// on the ambient space, with `A^{(x)n}` acting through the closure. It is
/// assembled as the product over places `k` of
/// `sum_{a,b} act(k, gamma_ab) (x) E_ab` on the `k`-th factor of `U`.
pub fn mat_action(gc: &GaloisClosure, m: usize, gamma: &[Vec<Element>]) -> Result<Matrix> {
    let r = gc.algebra().rank();
    if gamma.len() != m || gamma.iter().any(|row| row.len() != m || row.iter().any(|x| x.len() != r)) {
        return Err(Error::WrongShape(format!("gamma must be {m}x{m} with entries of length {r}")));
    }
    let n = gc.n();
    let f = gc.field();
    let g = gc.dim();
    let mu = upow(m, n)?;
    let mut out = Matrix::identity(g * mu, f);
    for k in 0..n {
        // columns of act(k, gamma_ab)
        let acts: Vec<Vec<Matrix>> = gamma.iter().map(|row| row.iter().map(|x| gc.act_elem(k, x).transpose()).collect()).collect();
        let mut items = Vec::new();
        for u in 0..mu {
            let mut d = u_digits(m, n, u);
            let b = d[k];
            for (a, acts_a) in acts.iter().enumerate() {
                d[k] = a;
                let u2 = u_index(m, &d);
                let at = &acts_a[b];
                for c in 0..g {
                    for (row, val) in at.row(c).iter() {
                        items.push((row * mu + u2, c * mu + u, val.clone()));
                    }
                }
            }
        }
        out = out.mul(&Matrix::from_triplets(g * mu, g * mu, items));
    }
    Ok(out)
}

/// `dim H_{A,U}` computed directly.
pub fn hermitian_dim(graded: &Graded, m: usize, opts: &ClosureOptions) -> Result<usize> {
    let gc = galois_closure_with(&graded.0, &graded.1, opts)?;
    Ok(hermitian_space(&gc, m, opts)?.dim())
}

/// `dim H_{prod A_i, U} = prod dim H_{A_i, U}`, both sides computed.
pub fn hermitian_product_check(factors: &[Graded], m: usize, opts: &CheckOptions) -> Result<IsoReport> {
    let product = crate::algebra::product_algebra(factors.to_vec())?;
    let direct = hermitian_dim(&product, m, &opts.closure)?;
    let parts = factors.iter().map(|g| hermitian_dim(g, m, &opts.closure)).collect::<Result<Vec<_>>>()?;
    let expected: usize = parts.iter().product();
    let mut rep = IsoReport::new("hermitian-product", product.0.name(), opts);
    rep.dim("m", m);
    rep.dim("direct", direct);
    for (i, p) in parts.iter().enumerate() {
        rep.dim(&format!("factor{}", i + 1), *p);
    }
    rep.dim("expected", expected);
    rep.check("dimension", if direct == expected { Ok(()) } else { Err(format!("{direct} != {expected}")) });
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Desk,
    Stretch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub row: String,
    pub group: String,
    pub representation: String,
    pub m: usize,
    pub n: usize,
    pub algebra: String,
    pub expected_dim: usize,
    pub computed_dim: Option<usize>,
    pub method: String,
    pub ms: u128,
}

impl CatalogEntry {
    /// Skipped rows count as passing.
    pub fn passed(&self) -> bool {
        self.computed_dim.is_none_or(|c| c == self.expected_dim)
    }
}

#[derive(Debug, Clone)]
pub struct CatalogOptions {
    pub tier: Tier,
    pub field: Field,
    pub closure: ClosureOptions,
    /// Share closures between rows with the same algebra.
    pub reuse: bool,
    /// Replaces the expected dimension of the named rows.
    pub expected_overrides: BTreeMap<String, usize>,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions {
            tier: Tier::Desk,
            field: Field::Rational,
            closure: ClosureOptions::default(),
            reuse: true,
            expected_overrides: BTreeMap::new(),
        }
    }
}

enum Method {
    Direct,
    /// Product of the factor Hermitian dimensions.
    ProductFormula,
    Skip,
}

struct Row {
    row: &'static str,
    group: &'static str,
    representation: &'static str,
    m: usize,
    n: usize,
    algebra: &'static str,
    expected: usize,
    method: Method,
    stretch: bool,
}

#[allow(clippy::too_many_arguments)]
const fn row(
    row: &'static str,
    group: &'static str,
    representation: &'static str,
    m: usize,
    n: usize,
    algebra: &'static str,
    expected: usize,
    method: Method,
    stretch: bool,
) -> Row {
    Row { row, group, representation, m, n, algebra, expected, method, stretch }
}

const ROWS: &[Row] = &[
    row("1", "SL_2 x SL_6", "2 (x) wedge^3(6)", 2, 4, "product:trivial:1+matrix:3", 40, Method::ProductFormula, false),
    row("1-direct", "SL_2 x SL_6", "2 (x) wedge^3(6)", 2, 4, "product:trivial:1+matrix:3", 40, Method::Direct, false),
    row("2", "SL_3 x SL_3 x SL_3", "3 (x) 3 (x) 3", 3, 3, "split:3", 27, Method::Direct, false),
    row("3", "SL_8", "wedge^4(8)", 2, 4, "matrix:4", 70, Method::Direct, true),
    row("4", "SL_3 x SL_6", "3 (x) wedge^2(6)", 3, 3, "product:trivial:1+matrix:2", 45, Method::Direct, false),
    row("5", "SL_2 x E_7", "2 (x) 56", 2, 4, "k x J (exceptional cubic Jordan)", 112, Method::Skip, false),
    row("6", "SL_9", "wedge^3(9)", 3, 3, "matrix:3", 84, Method::Direct, false),
    row("7", "SL_3 x E_6", "3 (x) 27", 3, 3, "k x O (split octonions)", 81, Method::Skip, false),
    row("8", "SL_3 x SL_3", "3 (x) Sym^2(3)", 3, 3, "product:trivial:1+trivial:2", 18, Method::Direct, false),
    row("9", "SL_2 x SL_2", "2 (x) Sym^3(2)", 2, 4, "product:trivial:1+trivial:3", 8, Method::Direct, false),
    row("10", "SL_3", "Sym^3(3)", 3, 3, "trivial:3", 10, Method::Direct, false),
    row("ex-m1-n2", "GL_2", "wedge^2(2)", 1, 2, "matrix:2", 1, Method::Direct, false),
    row("ex-m2-n2", "GL_4", "wedge^2(4)", 2, 2, "matrix:2", 6, Method::Direct, false),
    row("ex-m3-n2", "GL_6", "wedge^2(6)", 3, 2, "matrix:2", 15, Method::Direct, false),
    row("ex-m2-n3", "GL_6", "wedge^3(6)", 2, 3, "matrix:3", 20, Method::Direct, false),
    row("ex-m2-n4", "GL_8", "wedge^4(8)", 2, 4, "matrix:4", 70, Method::Direct, true),
];

/// Rows of the catalog, in table order, without computing anything.
pub fn catalog_rows(tier: Tier) -> Vec<(String, String)> {
    ROWS.iter()
        .filter(|r| tier == Tier::Stretch || !r.stretch)
        .map(|r| (r.row.to_string(), r.algebra.to_string()))
        .collect()
}

/// Expected versus computed Hermitian dimensions for the associative
/// Vinberg representations and the `End(V)` examples.
pub fn vinberg_catalog(opts: &CatalogOptions) -> Result<Vec<CatalogEntry>> {
    let mut cache: BTreeMap<String, GaloisClosure> = BTreeMap::new();
    let mut closure_of = |preset: &str| -> Result<GaloisClosure> {
        if let Some(gc) = cache.get(preset) {
            return Ok(gc.clone());
        }
        let (alg, deg) = parse_preset(preset, opts.field)?.build()?;
        let gc = galois_closure_with(&alg, &deg, &opts.closure)?;
        if opts.reuse {
            cache.insert(preset.to_string(), gc.clone());
        }
        Ok(gc)
    };
    let mut out = Vec::new();
    for r in ROWS.iter().filter(|r| opts.tier == Tier::Stretch || !r.stretch) {
        let t0 = Instant::now();
        let (computed, method) = match r.method {
            Method::Skip => (None, "skipped: non-associative, out of scope"),
            Method::Direct => {
                let gc = closure_of(r.algebra)?;
                (Some(hermitian_space(&gc, r.m, &opts.closure)?.dim()), "direct")
            }
            Method::ProductFormula => {
                let factors = r.algebra.strip_prefix("product:").unwrap_or(r.algebra);
                let mut dim = 1;
                for f in factors.split('+') {
                    let gc = closure_of(f)?;
                    dim *= hermitian_space(&gc, r.m, &opts.closure)?.dim();
                }
                (Some(dim), "product-formula")
            }
        };
        out.push(CatalogEntry {
            row: r.row.into(),
            group: r.group.into(),
            representation: r.representation.into(),
            m: r.m,
            n: r.n,
            algebra: r.algebra.into(),
            expected_dim: opts.expected_overrides.get(r.row).copied().unwrap_or(r.expected),
            computed_dim: computed,
            method: method.into(),
            ms: t0.elapsed().as_millis(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{berkowitz, matrix, quadratic, split, trivial, StructureAlgebra};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    fn gc_of(g: &Graded) -> GaloisClosure {
        galois_closure_with(&g.0, &g.1, &ClosureOptions::default()).unwrap()
    }

    fn random_gamma(alg: &StructureAlgebra, m: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Element>> {
        (0..m).map(|_| (0..m).map(|_| alg.random_element(rng, 3)).collect()).collect()
    }

    fn h_dim(g: &Graded, m: usize) -> usize {
        hermitian_dim(g, m, &ClosureOptions::default()).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(h_dim(&trivial(Q, 3), 3), 10);
        assert_eq!(h_dim(&split(Q, 3), 3), 27);
        assert_eq!(h_dim(&quadratic(Q, 2), 2), 4);
        assert_eq!(h_dim(&quadratic(Q, 2), 3), 9);
        assert_eq!(h_dim(&matrix(Q, 2), 2), 6);
        assert_eq!(h_dim(&trivial(Q, 1), 4), 4);
    }

    #[test]
    fn identity_gamma() {
        let g = matrix(Q, 2);
        let gc = gc_of(&g);
        let one = g.0.one();
        let zero = g.0.zero();
        let gamma = vec![vec![one.clone(), zero.clone()], vec![zero, one]];
        let op = mat_action(&gc, 2, &gamma).unwrap();
        assert_eq!(op, Matrix::identity(gc.dim() * 4, Q));
        assert!(mat_action(&gc, 3, &gamma).is_err());
    }

    #[test]
    fn action_is_multiplicative_and_preserves_h() {
        let g = split(Q, 2);
        let alg = &g.0;
        let gc = gc_of(&g);
        let h = hermitian_space(&gc, 2, &ClosureOptions::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            let g1 = random_gamma(alg, 2, &mut rng);
            let g2 = random_gamma(alg, 2, &mut rng);
            let prod: Vec<Vec<Element>> = (0..2)
                .map(|i| (0..2).map(|j| (0..2).fold(alg.zero(), |acc, k| alg.add(&acc, &alg.mul(&g1[i][k], &g2[k][j])))).collect())
                .collect();
            let a1 = mat_action(&gc, 2, &g1).unwrap();
            let a2 = mat_action(&gc, 2, &g2).unwrap();
            assert_eq!(a1.mul(&a2), mat_action(&gc, 2, &prod).unwrap());
            assert!(h.restricted_trace(&a1).is_some());
        }
    }

    /// Trace of `gamma` on `H_{Mat_n, U}` equals `e_n` of `gamma` as an
    /// `mn x mn` matrix, i.e. its trace on `wedge^n(V (x) U)`.
    #[test]
    fn trace_matches_exterior_power() {
        for (n, m) in [(2, 2), (2, 3), (3, 2)] {
            let g = matrix(Q, n);
            let gc = gc_of(&g);
            let h = hermitian_space(&gc, m, &ClosureOptions::default()).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..3 {
                let gamma = random_gamma(&g.0, m, &mut rng);
                let tr = h.restricted_trace(&mat_action(&gc, m, &gamma).unwrap()).unwrap();
                let big: Vec<Vec<Scalar>> = (0..m * n)
                    .map(|r| (0..m * n).map(|c| gamma[r / n][c / n][(r % n) * n + c % n].clone()).collect())
                    .collect();
                let coeffs = berkowitz(&Q, &big);
                let sign = if n % 2 == 0 { Q.one() } else { Q.from_i64(-1) };
                assert_eq!(tr, coeffs[n].mul(&sign), "n = {n}, m = {m}");
            }
        }
    }

    #[test]
    fn commutation_with_symmetric_actions() {
        let g = matrix(Q, 2);
        let alg = &g.0;
        let gc = gc_of(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (s1, s2) = separate_generators(&gc, 2, 0).unwrap();
        let d = diagonal_generator(&gc, 2, 0).unwrap();
        for _ in 0..5 {
            let gamma = random_gamma(alg, 2, &mut rng);
            let op = mat_action(&gc, 2, &gamma).unwrap();
            assert_eq!(op.mul(&d), d.mul(&op));
            // pure tensors a (x) g commute with each action separately
            let a = alg.random_element(&mut rng, 3);
            let c: Vec<i64> = (0..4).map(|i| [2, -1, 1, 3][i]).collect();
            let pure: Vec<Vec<Element>> = (0..2).map(|i| (0..2).map(|j| alg.scale(&Q.from_i64(c[i * 2 + j]), &a)).collect()).collect();
            let op = mat_action(&gc, 2, &pure).unwrap();
            assert_eq!(op.mul(&s1), s1.mul(&op));
            assert_eq!(op.mul(&s2), s2.mul(&op));
        }
    }

    #[test]
    fn product_check() {
        let opts = CheckOptions::default();
        let r = hermitian_product_check(&[trivial(Q, 1), trivial(Q, 3)], 2, &opts).unwrap();
        assert!(r.passed);
        assert_eq!(r.dims["direct"], 8);
        let r = hermitian_product_check(&[trivial(Q, 1), quadratic(Q, 2)], 2, &opts).unwrap();
        assert!(r.passed);
        assert_eq!(r.dims["direct"], 8);
    }

    #[test]
    fn u_perm_is_a_homomorphism() {
        let n = 3;
        for s in sym::all(n) {
            for t in sym::all(n) {
                let lhs = u_perm(2, n, &sym::compose(&s, &t), Q).unwrap();
                let rhs = u_perm(2, n, &s, Q).unwrap().mul(&u_perm(2, n, &t, Q).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn catalog_overrides() {
        let rows = catalog_rows(Tier::Desk);
        assert!(rows.iter().all(|(r, _)| r != "3"));
        assert!(catalog_rows(Tier::Stretch).iter().any(|(r, _)| r == "3"));
    }
}
