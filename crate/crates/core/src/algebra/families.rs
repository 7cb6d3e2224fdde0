//! Constructors for the algebra families: split, trivial, matrix, monogenic
//! quotients, products, cyclic algebras and split semisimple algebras.

use super::degree::{CyclicData, DegreeStructure};
use super::structure::StructureAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, SparseVec};

pub type Graded = (StructureAlgebra, DegreeStructure);

/// `k^n` with componentwise product and the regular degree-n structure.
pub fn split(field: Field, n: usize) -> Graded {
    let alg = StructureAlgebra::from_fn(format!("k^{n}"), field, n, vec![field.one(); n], |i, j| {
        if i == j { SparseVec::unit(n, i, field) } else { SparseVec::zero(n) }
    });
    let deg = DegreeStructure::regular(&alg);
    (alg, deg)
}

/// The base field `k_[n]`, embedded diagonally in `Mat_n`.
pub fn trivial(field: Field, n: usize) -> Graded {
    let alg = StructureAlgebra::from_fn(format!("k_[{n}]"), field, 1, vec![field.one()], |_, _| {
        SparseVec::unit(1, 0, field)
    });
    (alg, DegreeStructure::trivial_diag(n))
}

/// `Mat_k` on matrix units `e_ij` at index `i k + j`.
pub fn matrix(field: Field, k: usize) -> Graded {
    let m = k * k;
    let unit = (0..m).map(|x| if x / k == x % k { field.one() } else { field.zero() }).collect();
    let alg = StructureAlgebra::from_fn(format!("Mat_{k}"), field, m, unit, |a, b| {
        let (i, j, p, l) = (a / k, a % k, b / k, b % k);
        if j == p { SparseVec::unit(m, i * k + l, field) } else { SparseVec::zero(m) }
    });
    (alg, DegreeStructure::matrix_identity(k))
}

/// `k[x]/(f)` on the basis `1, x, .., x^{m-1}`, where `f` is monic of degree
/// m with the given lower coefficients `c_0, .., c_{m-1}`.
pub fn monogenic(field: Field, name: impl Into<String>, lower: &[Scalar]) -> Graded {
    let m = lower.len();
    // reduce x^e for e < 2m - 1 into the basis
    let mut powers: Vec<Vec<Scalar>> = (0..m).map(|e| unit_dense(field, m, e)).collect();
    for _ in m..2 * m - 1 {
        let prev = powers.last().unwrap();
        let mut next = vec![field.zero(); m];
        next[1..m].clone_from_slice(&prev[..m - 1]);
        // x^m = -sum c_i x^i
        let top = &prev[m - 1];
        for (e, c) in lower.iter().enumerate() {
            next[e] = next[e].sub(&top.mul(c));
        }
        powers.push(next);
    }
    let alg = StructureAlgebra::from_fn(name, field, m, unit_dense(field, m, 0), |i, j| {
        SparseVec::from_dense(&powers[i + j])
    });
    let deg = DegreeStructure::regular(&alg);
    (alg, deg)
}

/// `k[x]/(x^2 - d)`.
pub fn quadratic(field: Field, d: i64) -> Graded {
    monogenic(field, format!("k[x]/(x^2-{d})").replace("--", "+"), &[field.from_i64(-d), field.zero()])
}

/// Dual numbers `k[x]/(x^2)`.
pub fn dual(field: Field) -> Graded {
    monogenic(field, "k[x]/(x^2)", &[field.zero(), field.zero()])
}

fn unit_dense(field: Field, m: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); m];
    v[i] = field.one();
    v
}

/// Direct product with factor-major basis ordering.
pub fn product_algebra(factors: Vec<Graded>) -> Result<Graded> {
    let field = factors
        .first()
        .map(|(a, _)| a.field())
        .ok_or_else(|| Error::MalformedSpec("product needs at least one factor".into()))?;
    if let Some((a, _)) = factors.iter().find(|(a, _)| a.field() != field) {
        return Err(Error::FieldMismatch(format!("{} is over {}, expected {field}", a.name(), a.field())));
    }
    let mut offsets = vec![0];
    for (a, _) in &factors {
        offsets.push(offsets.last().unwrap() + a.rank());
    }
    let m = *offsets.last().unwrap();
    let owner: Vec<usize> = (0..factors.len()).flat_map(|f| std::iter::repeat_n(f, factors[f].0.rank())).collect();
    let unit: Vec<Scalar> = factors.iter().flat_map(|(a, _)| a.unit().iter().cloned()).collect();
    let name = factors.iter().map(|(a, _)| a.name()).collect::<Vec<_>>().join(" x ");
    let alg = StructureAlgebra::from_fn(name, field, m, unit, |i, j| {
        let f = owner[i];
        if owner[j] != f {
            return SparseVec::zero(m);
        }
        let o = offsets[f];
        factors[f].0.structure_constants(i - o, j - o).remap(m, |k| k + o)
    });
    let deg = DegreeStructure::product(factors);
    Ok((alg, deg))
}

/// Cyclic algebra `(K, sigma, gamma)`: `u^n = gamma`, `alpha u = u sigma(alpha)`,
/// on the basis `u^i k_j` at index `i n + j`.
pub fn cyclic_algebra(ext: StructureAlgebra, sigma: Matrix, gamma: Scalar) -> Result<Graded> {
    let data = CyclicData { ext, sigma, gamma };
    data.validate()?;
    let field = data.ext.field();
    let n = data.ext.rank();
    let m = n * n;
    let mut unit = vec![field.zero(); m];
    unit[..n].clone_from_slice(data.ext.unit());
    let alg = StructureAlgebra::from_fn(format!("cyclic({})", data.ext.name()), field, m, unit, |a, b| {
        let (i, j, l, h) = (a / n, a % n, b / n, b % n);
        // (u^i k_j)(u^l k_h) = u^{i+l} sigma^l(k_j) k_h
        let k = &data.ext;
        let mut w = k.mul(&data.apply_sigma_pow(&k.basis_element(j), l), &k.basis_element(h));
        let mut p = i + l;
        if p >= n {
            p -= n;
            w = k.scale(&data.gamma, &w);
        }
        SparseVec::from_dense(&w).remap(m, |t| p * n + t)
    });
    let deg = DegreeStructure::cyclic(data);
    Ok((alg, deg))
}

/// Quaternion algebra `(d, gamma)`: K = k[x]/(x^2 - d), sigma: x -> -x.
pub fn quaternion(field: Field, d: i64, gamma: i64) -> Result<Graded> {
    let (k, _) = quadratic(field, d);
    let sigma = Matrix::from_dense(&[vec![field.one(), field.zero()], vec![field.zero(), field.from_i64(-1)]]);
    let (alg, deg) = cyclic_algebra(k, sigma, field.from_i64(gamma))?;
    Ok((alg.with_name(format!("({d},{gamma})")), deg))
}

/// Degree-3 cyclic algebra over K = k[x]/(x^3 - 3x - 1) with
/// sigma(x) = 2 - x^2 and gamma = 2. Over Q this is a division algebra
/// since 2 is inert in K.
pub fn cyclic3(field: Field) -> Result<Graded> {
    let f = |n: i64| field.from_i64(n);
    let (k, _) = monogenic(field, "k[x]/(x^3-3x-1)", &[f(-1), f(-3), f(0)]);
    // columns: sigma(1) = 1, sigma(x) = 2 - x^2, sigma(x^2) = -x^2 + x + 4
    let sigma = Matrix::from_dense(&[vec![f(1), f(2), f(4)], vec![f(0), f(0), f(1)], vec![f(0), f(-1), f(-1)]]);
    let (alg, deg) = cyclic_algebra(k, sigma, f(2))?;
    Ok((alg.with_name("cyclic3"), deg))
}

/// `prod Mat_{n_i}` with the product of matrix-identity structures.
pub fn semisimple_from_dims(field: Field, dims: &[usize]) -> Result<Graded> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::MalformedSpec("dims must be a nonempty list of positive integers".into()));
    }
    let (alg, deg) = product_algebra(dims.iter().map(|&d| matrix(field, d)).collect())?;
    let label = dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
    Ok((alg.with_name(format!("semisimple[{label}]")), deg))
}
