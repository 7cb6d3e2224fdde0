//! Degree-n structures and the characteristic polynomial `det(T - iota(a))`.

use super::charpoly::{berkowitz, AlgebraRing, CharPoly};
use super::structure::{Element, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// Data of a cyclic algebra: a commutative extension `K` of rank n over the
/// base field, an automorphism `sigma` (matrix acting on K-coordinates as
/// column vectors) and `gamma` in the base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicData {
    pub ext: StructureAlgebra,
    pub sigma: Matrix,
    pub gamma: Scalar,
}

impl CyclicData {
    pub fn apply_sigma(&self, x: &[Scalar]) -> Element {
        (0..x.len())
            .map(|r| {
                self.sigma
                    .row(r)
                    .iter()
                    .fold(self.ext.field().zero(), |acc, (c, s)| acc.add(&s.mul(&x[c])))
            })
            .collect()
    }

    pub fn apply_sigma_pow(&self, x: &[Scalar], e: usize) -> Element {
        let mut y = x.to_vec();
        for _ in 0..e {
            y = self.apply_sigma(&y);
        }
        y
    }

    /// Checks that K is commutative, sigma is a unital ring map of order
    /// exactly n and gamma is nonzero.
    pub fn validate(&self) -> Result<()> {
        let k = &self.ext;
        let n = k.rank();
        if !k.is_commutative() {
            return Err(Error::UnsupportedExtension("K must be commutative".into()));
        }
        if self.sigma.nrows() != n || self.sigma.ncols() != n {
            return Err(Error::WrongShape(format!("sigma must be {n}x{n}")));
        }
        if self.gamma.is_zero() || self.gamma.field() != k.field() {
            return Err(Error::MalformedSpec("gamma must be a nonzero base-field scalar".into()));
        }
        if self.apply_sigma(k.unit()) != *k.unit() {
            return Err(Error::NotAutomorphism("sigma(1) != 1".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.apply_sigma(&k.mul(&k.basis_element(i), &k.basis_element(j)));
                let rhs = k.mul(&self.apply_sigma(&k.basis_element(i)), &self.apply_sigma(&k.basis_element(j)));
                if lhs != rhs {
                    return Err(Error::NotAutomorphism(format!("sigma(k{i} k{j}) != sigma(k{i}) sigma(k{j})")));
                }
            }
        }
        let id = Matrix::identity(n, k.field());
        let mut p = self.sigma.clone();
        for _ in 1..n {
            if p == id {
                return Err(Error::AutomorphismOrderWrong(n));
            }
            p = p.mul(&self.sigma);
        }
        if p != id {
            return Err(Error::AutomorphismOrderWrong(n));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeKind {
    Regular,
    MatrixIdentity(usize),
    TrivialDiag,
    Power(Box<DegreeStructure>, usize),
    Product(Vec<(StructureAlgebra, DegreeStructure)>),
    CyclicExplicit(Box<CyclicData>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStructure {
    degree: usize,
    kind: DegreeKind,
}

impl DegreeStructure {
    pub fn regular(alg: &StructureAlgebra) -> Self {
        DegreeStructure { degree: alg.rank(), kind: DegreeKind::Regular }
    }

    pub fn matrix_identity(k: usize) -> Self {
        DegreeStructure { degree: k, kind: DegreeKind::MatrixIdentity(k) }
    }

    /// `a -> a * I_n` on a rank-one algebra.
    pub fn trivial_diag(n: usize) -> Self {
        DegreeStructure { degree: n, kind: DegreeKind::TrivialDiag }
    }

    pub fn power(inner: DegreeStructure, multiplicity: usize) -> Self {
        DegreeStructure { degree: inner.degree * multiplicity, kind: DegreeKind::Power(Box::new(inner), multiplicity) }
    }

    pub(crate) fn product(factors: Vec<(StructureAlgebra, DegreeStructure)>) -> Self {
        let degree = factors.iter().map(|(_, d)| d.degree).sum();
        DegreeStructure { degree, kind: DegreeKind::Product(factors) }
    }

    pub(crate) fn cyclic(data: CyclicData) -> Self {
        DegreeStructure { degree: data.ext.rank(), kind: DegreeKind::CyclicExplicit(Box::new(data)) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> &DegreeKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            DegreeKind::Regular => "regular",
            DegreeKind::MatrixIdentity(_) => "matrix_identity",
            DegreeKind::TrivialDiag => "trivial_diag",
            DegreeKind::Power(..) => "power",
            DegreeKind::Product(_) => "product",
            DegreeKind::CyclicExplicit(_) => "cyclic",
        }
    }

    /// Checks the shape invariants of this structure against `alg`.
    pub fn validate(&self, alg: &StructureAlgebra) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDegree(msg));
        if self.degree == 0 {
            return bad("degree must be positive".into());
        }
        match &self.kind {
            DegreeKind::Regular if self.degree != alg.rank() => bad("regular degree must equal the rank".into()),
            DegreeKind::MatrixIdentity(k) if k * k != alg.rank() || *k != self.degree => {
                bad(format!("matrix_identity({k}) needs rank {}", k * k))
            }
            DegreeKind::TrivialDiag if alg.rank() != 1 => bad("trivial_diag needs a rank-1 algebra".into()),
            DegreeKind::Power(inner, r) => {
                if *r == 0 || self.degree != r * inner.degree {
                    return bad("power degree must be multiplicity times inner degree".into());
                }
                inner.validate(alg)
            }
            DegreeKind::Product(factors) => {
                if factors.iter().map(|(_, d)| d.degree).sum::<usize>() != self.degree {
                    return bad("product degree must be the sum of factor degrees".into());
                }
                if factors.iter().map(|(a, _)| a.rank()).sum::<usize>() != alg.rank() {
                    return bad("product rank must be the sum of factor ranks".into());
                }
                for (a, d) in factors {
                    d.validate(a)?;
                }
                Ok(())
            }
            DegreeKind::CyclicExplicit(c) => {
                let n = c.ext.rank();
                if alg.rank() != n * n || self.degree != n {
                    return bad(format!("cyclic algebra of degree {n} needs rank {}", n * n));
                }
                c.validate()
            }
            _ => Ok(()),
        }
    }

    /// The same structure over a larger field, for base change.
    pub fn promote(&self, field: crate::linalg::Field) -> Result<Self> {
        let kind = match &self.kind {
            DegreeKind::Power(inner, r) => DegreeKind::Power(Box::new(inner.promote(field)?), *r),
            DegreeKind::Product(fs) => DegreeKind::Product(
                fs.iter().map(|(a, d)| Ok((a.promote(field)?, d.promote(field)?))).collect::<Result<_>>()?,
            ),
            DegreeKind::CyclicExplicit(c) => DegreeKind::CyclicExplicit(Box::new(CyclicData {
                ext: c.ext.promote(field)?,
                sigma: c.sigma.promote(field)?,
                gamma: c.gamma.promote(field)?,
            })),
            k => k.clone(),
        };
        Ok(DegreeStructure { degree: self.degree, kind })
    }

    /// Offsets of the product factors, or `None` for non-product kinds.
    pub fn factor_offsets(&self) -> Option<Vec<usize>> {
        match &self.kind {
            DegreeKind::Product(f) => {
                let mut off = vec![0];
                for (a, _) in f {
                    off.push(off.last().unwrap() + a.rank());
                }
                Some(off)
            }
            _ => None,
        }
    }

    /// Idempotents `(0, .., 1, .., 0)` of a product structure.
    pub fn idempotents(&self, alg: &StructureAlgebra) -> Vec<Element> {
        let DegreeKind::Product(factors) = &self.kind else {
            return vec![alg.one()];
        };
        let off = self.factor_offsets().unwrap();
        factors
            .iter()
            .enumerate()
            .map(|(j, (a, _))| {
                let mut e = alg.zero();
                e[off[j]..off[j + 1]].clone_from_slice(a.unit());
                e
            })
            .collect()
    }
}

/// `det(T - iota(a))` as a [`CharPoly`] of degree n over the base field.
pub fn char_poly(alg: &StructureAlgebra, deg: &DegreeStructure, a: &[Scalar]) -> Result<CharPoly> {
    if a.len() != alg.rank() {
        return Err(Error::DimensionMismatch { expected: alg.rank(), got: a.len() });
    }
    let f = alg.field();
    Ok(match &deg.kind {
        DegreeKind::Regular => {
            let m = alg.left_regular_matrix(a).to_dense(f);
            CharPoly::from_monic(f, &berkowitz(&f, &m))
        }
        DegreeKind::MatrixIdentity(k) => {
            let m: Vec<Vec<Scalar>> = (0..*k).map(|i| a[i * k..(i + 1) * k].to_vec()).collect();
            CharPoly::from_monic(f, &berkowitz(&f, &m))
        }
        DegreeKind::TrivialDiag => {
            // (T - c)^n
            CharPoly::from_s(f, vec![a[0].clone()]).pow(deg.degree)
        }
        DegreeKind::Power(inner, r) => char_poly(alg, inner, a)?.pow(*r),
        DegreeKind::Product(factors) => {
            let off = deg.factor_offsets().unwrap();
            let mut acc = CharPoly::from_s(f, Vec::new());
            for (j, (fa, fd)) in factors.iter().enumerate() {
                acc = acc.mul(&char_poly(fa, fd, &a[off[j]..off[j + 1]])?);
            }
            acc
        }
        DegreeKind::CyclicExplicit(c) => {
            let m = cyclic_matrix(c, a);
            let coeffs = berkowitz(&AlgebraRing(&c.ext), &m);
            let mut monic = Vec::with_capacity(coeffs.len());
            for (i, x) in coeffs.iter().enumerate() {
                monic.push(in_base(&c.ext, x).ok_or_else(|| Error::CoefficientNotInBase {
                    index: i,
                    value: format!("{x:?}"),
                })?);
            }
            CharPoly::from_monic(f, &monic)
        }
    })
}

/// The n x n matrix over K with entry (r, c) equal to `sigma^c(x_{r-c})`
/// below the diagonal and `gamma sigma^c(x_{n+r-c})` above it, where
/// `a = sum_i u^i x_i`.
pub fn cyclic_matrix(c: &CyclicData, a: &[Scalar]) -> Vec<Vec<Element>> {
    let n = c.ext.rank();
    let x: Vec<&[Scalar]> = (0..n).map(|i| &a[i * n..(i + 1) * n]).collect();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|col| {
                    if r >= col {
                        c.apply_sigma_pow(x[r - col], col)
                    } else {
                        c.ext.scale(&c.gamma, &c.apply_sigma_pow(x[n + r - col], col))
                    }
                })
                .collect()
        })
        .collect()
}

/// `Some(s)` when `x = s * 1_K`.
fn in_base(k: &StructureAlgebra, x: &[Scalar]) -> Option<Scalar> {
    let (p, u) = k.unit().iter().enumerate().find(|(_, u)| !u.is_zero())?;
    let s = x[p].div(u)?;
    (k.scalar(&s) == x).then_some(s)
}

/// `Tr(a) - a` for degree-2 structures.
pub fn conjugate(alg: &StructureAlgebra, deg: &DegreeStructure, a: &[Scalar]) -> Result<Element> {
    if deg.degree != 2 {
        return Err(Error::WrongDegree { expected: 2, got: deg.degree });
    }
    let tr = char_poly(alg, deg, a)?.s(1);
    Ok(alg.sub(&alg.scalar(&tr), a))
}

pub fn trace(alg: &StructureAlgebra, deg: &DegreeStructure, a: &[Scalar]) -> Result<Scalar> {
    Ok(char_poly(alg, deg, a)?.s(1))
}

pub fn norm(alg: &StructureAlgebra, deg: &DegreeStructure, a: &[Scalar]) -> Result<Scalar> {
    Ok(char_poly(alg, deg, a)?.s(deg.degree))
}
