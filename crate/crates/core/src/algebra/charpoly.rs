//! Division-free characteristic polynomials (Berkowitz) over commutative rings.

use super::structure::{Element, StructureAlgebra};
use crate::linalg::{Field, Scalar};

/// Just enough of a commutative ring for Berkowitz.
pub trait CommRing {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
}

impl CommRing for Field {
    type Elem = Scalar;
    fn zero(&self) -> Scalar {
        Field::zero(self)
    }
    fn one(&self) -> Scalar {
        Field::one(self)
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.add(b)
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.mul(b)
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        a.neg()
    }
}

/// A commutative structure algebra viewed as a ring. The caller is
/// responsible for commutativity.
pub struct AlgebraRing<'a>(pub &'a StructureAlgebra);

impl CommRing for AlgebraRing<'_> {
    type Elem = Element;
    fn zero(&self) -> Element {
        self.0.zero()
    }
    fn one(&self) -> Element {
        self.0.one()
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        self.0.add(a, b)
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        self.0.mul(a, b)
    }
    fn neg(&self, a: &Element) -> Element {
        a.iter().map(Scalar::neg).collect()
    }
}

/// Coefficients of `det(T I - A)` from `T^n` down to `T^0` (leading 1).
pub fn berkowitz<R: CommRing>(ring: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
    let n = a.len();
    if n == 0 {
        return vec![ring.one()];
    }
    let mut v = vec![ring.one(), ring.neg(&a[0][0])];
    for r in 1..n {
        // Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C
        let mut t = vec![ring.one(), ring.neg(&a[r][r])];
        let mut col: Vec<R::Elem> = (0..r).map(|i| a[i][r].clone()).collect();
        for k in 0..r {
            let mut dot = ring.zero();
            for (i, c) in col.iter().enumerate() {
                dot = ring.add(&dot, &ring.mul(&a[r][i], c));
            }
            t.push(ring.neg(&dot));
            if k + 1 < r {
                col = (0..r)
                    .map(|i| {
                        let mut s = ring.zero();
                        for (j, c) in col.iter().enumerate() {
                            s = ring.add(&s, &ring.mul(&a[i][j], c));
                        }
                        s
                    })
                    .collect();
            }
        }
        let next = (0..r + 2)
            .map(|i| {
                let mut s = ring.zero();
                for j in 0..=i.min(r) {
                    s = ring.add(&s, &ring.mul(&t[i - j], &v[j]));
                }
                s
            })
            .collect();
        v = next;
    }
    v
}

/// Reduced characteristic polynomial data `s_1..s_n`, where
/// `P(T) = sum_j (-1)^j s_j T^{n-j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    field: Field,
    s: Vec<Scalar>,
}

impl CharPoly {
    /// From monic coefficients listed from the top degree down.
    pub fn from_monic(field: Field, coeffs: &[Scalar]) -> Self {
        assert!(!coeffs.is_empty() && coeffs[0].is_one(), "polynomial must be monic");
        let s = coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| if (i + 1) % 2 == 0 { c.clone() } else { c.neg() })
            .collect();
        CharPoly { field, s }
    }

    pub fn from_s(field: Field, s: Vec<Scalar>) -> Self {
        CharPoly { field, s }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.s.len()
    }

    /// `s_j` for `1 <= j <= n`; `s_0 = 1` and `s_j = 0` past the degree.
    pub fn s(&self, j: usize) -> Scalar {
        match j {
            0 => self.field.one(),
            j if j <= self.s.len() => self.s[j - 1].clone(),
            _ => self.field.zero(),
        }
    }

    pub fn s_values(&self) -> &[Scalar] {
        &self.s
    }

    pub fn monic_coeffs(&self) -> Vec<Scalar> {
        let mut out = vec![self.field.one()];
        for (i, s) in self.s.iter().enumerate() {
            out.push(if (i + 1) % 2 == 0 { s.clone() } else { s.neg() });
        }
        out
    }

    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        let a = self.monic_coeffs();
        let b = other.monic_coeffs();
        let mut c = vec![self.field.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                c[i + j] = c[i + j].add(&x.mul(y));
            }
        }
        CharPoly::from_monic(self.field, &c)
    }

    pub fn pow(&self, r: usize) -> CharPoly {
        let mut acc = CharPoly::from_s(self.field, Vec::new());
        for _ in 0..r {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluates at a scalar.
    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.monic_coeffs().iter().fold(self.field.zero(), |acc, c| acc.mul(t).add(c))
    }

    /// Evaluates at an algebra element (Horner).
    pub fn eval_in(&self, alg: &StructureAlgebra, a: &[Scalar]) -> Element {
        let mut acc = alg.zero();
        for c in self.monic_coeffs() {
            acc = alg.add(&alg.mul(&acc, a), &alg.scalar(&c));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Scalar {
        Scalar::rational(n, 1)
    }

    // det by permutation expansion
    fn leibniz(m: &[Vec<Scalar>]) -> Scalar {
        let n = m.len();
        let mut idx: Vec<usize> = (0..n).collect();
        let mut total = q(0);
        permute(&mut idx, 0, &mut |p| {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            let mut prod = if inv % 2 == 0 { q(1) } else { q(-1) };
            for (i, &j) in p.iter().enumerate() {
                prod = prod.mul(&m[i][j]);
            }
            total = total.add(&prod);
        });
        total
    }

    fn permute(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn small_cases() {
        let f = Field::Rational;
        let a = vec![vec![q(1), q(2)], vec![q(3), q(4)]];
        let p = CharPoly::from_monic(f, &berkowitz(&f, &a));
        assert_eq!(p.s(1), q(5));
        assert_eq!(p.s(2), q(-2));
        assert_eq!(berkowitz(&f, &[]), vec![q(1)]);
    }

    #[test]
    fn product_and_power() {
        let f = Field::Rational;
        // (T - 2)(T - 3) = T^2 - 5T + 6
        let a = CharPoly::from_s(f, vec![q(2)]);
        let b = CharPoly::from_s(f, vec![q(3)]);
        assert_eq!(a.mul(&b).s_values(), &[q(5), q(6)]);
        assert_eq!(a.pow(3).s_values(), &[q(6), q(12), q(8)]);
        assert_eq!(a.eval(&q(2)), q(0));
    }

    proptest! {
        #[test]
        fn matches_leibniz(n in 1usize..5, entries in proptest::collection::vec(-5i64..6, 16)) {
            let f = Field::Rational;
            let a: Vec<Vec<Scalar>> = (0..n).map(|i| (0..n).map(|j| q(entries[i * 4 + j])).collect()).collect();
            let p = CharPoly::from_monic(f, &berkowitz(&f, &a));
            for t in -2i64..=n as i64 {
                let shifted: Vec<Vec<Scalar>> = (0..n)
                    .map(|i| (0..n).map(|j| {
                        let d = if i == j { q(t) } else { q(0) };
                        d.sub(&a[i][j])
                    }).collect())
                    .collect();
                prop_assert_eq!(p.eval(&q(t)), leibniz(&shifted));
            }
        }

        #[test]
        fn s1_is_trace(n in 1usize..5, entries in proptest::collection::vec(-9i64..10, 16)) {
            let f = Field::prime(11).unwrap();
            let a: Vec<Vec<Scalar>> = (0..n).map(|i| (0..n).map(|j| f.from_i64(entries[i * 4 + j])).collect()).collect();
            let p = CharPoly::from_monic(f, &berkowitz(&f, &a));
            let tr = (0..n).fold(f.zero(), |s, i| s.add(&a[i][i]));
            prop_assert_eq!(p.s(1), tr);
        }
    }
}
