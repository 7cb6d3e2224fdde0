//! Exact base fields: the rationals, prime fields and quadratic extensions
//! of the rationals.
//!
//! A [`Scalar`] carries enough of its field (modulus, radicand) to do
//! arithmetic on its own, but constants such as zero and one need a
//! [`Field`] descriptor. Mixing scalars of different fields is a logic
//! error and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::Error;

/// Describes one of the supported exact fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Field {
    Rational,
    Prime { p: u32 },
    Quadratic { d: i64 },
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

pub fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut k: u64 = 2;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Self, Error> {
        let f = Field::Prime { p };
        f.validate()?;
        Ok(f)
    }

    pub fn quadratic(d: i64) -> Result<Self, Error> {
        let f = Field::Quadratic { d };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), Error> {
        match *self {
            Field::Rational => Ok(()),
            Field::Prime { p } => {
                if p < (1 << 31) && is_prime(p as u64) {
                    Ok(())
                } else {
                    Err(Error::InvalidField(format!("{p} is not a prime below 2^31")))
                }
            }
            Field::Quadratic { d } => {
                // for squarefree d != 0, 1 the norm form a^2 - d b^2 is anisotropic
                if d == 0 || d == 1 || !is_squarefree(d) {
                    Err(Error::InvalidField(format!(
                        "sqrt({d}) does not generate a quadratic field"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_rational(&Rational::from_int(n))
            .expect("integers embed in every supported field")
    }

    /// Image of a rational in this field; `None` when the denominator
    /// vanishes mod p.
    pub fn from_rational(&self, r: &Rational) -> Option<Scalar> {
        match *self {
            Field::Rational => Some(Scalar::Rational(r.clone())),
            Field::Quadratic { d } => Some(Scalar::Quadratic(Quad {
                a: r.clone(),
                b: Rational::ZERO,
                d,
            })),
            Field::Prime { p } => {
                let pb = num_bigint::BigInt::from(p);
                let reduce = |x: num_bigint::BigInt| -> u32 {
                    let m = ((x % &pb) + &pb) % &pb;
                    u32::try_from(m).expect("residue below p")
                };
                let n = Fp { v: reduce(r.numer()), p };
                let d = Fp { v: reduce(r.denom()), p };
                d.inv().map(|di| Scalar::Prime(n.mul(&di)))
            }
        }
    }

    /// `sqrt(d)` for a quadratic field.
    pub fn sqrt_d(&self) -> Option<Scalar> {
        match *self {
            Field::Quadratic { d } => Some(Scalar::Quadratic(Quad {
                a: Rational::ZERO,
                b: Rational::ONE,
                d,
            })),
            _ => None,
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rational, Scalar::Rational(_)) => true,
            (Field::Prime { p }, Scalar::Prime(x)) => *p == x.p,
            (Field::Quadratic { d }, Scalar::Quadratic(q)) => *d == q.d,
            _ => false,
        }
    }

    /// Parses the string form: `"p/q"`, `"v mod p"` or `"a+b*sqrt(d)"`.
    /// Plain rationals are accepted in every field.
    pub fn parse(&self, s: &str) -> Result<Scalar, Error> {
        let bad = || Error::ParseScalar(s.to_string());
        let t = s.trim();
        match *self {
            Field::Rational => Ok(Scalar::Rational(t.parse().map_err(|_| bad())?)),
            Field::Prime { p } => {
                if let Some((v, q)) = t.split_once("mod") {
                    let q: u32 = q.trim().parse().map_err(|_| bad())?;
                    if q != p {
                        return Err(bad());
                    }
                    let v: Rational = v.trim().parse().map_err(|_| bad())?;
                    self.from_rational(&v).ok_or_else(bad)
                } else {
                    let v: Rational = t.parse().map_err(|_| bad())?;
                    self.from_rational(&v).ok_or_else(bad)
                }
            }
            Field::Quadratic { d } => parse_quadratic(t, d).ok_or_else(bad),
        }
    }

    /// Parses `rational`, `prime:7` or `quadratic:2`.
    pub fn from_name(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidField(s.to_string());
        let t = s.trim();
        match t.split_once(':') {
            None if t == "rational" => Ok(Field::Rational),
            Some(("prime", p)) => Field::prime(p.trim().parse().map_err(|_| bad())?),
            Some(("quadratic", d)) => Field::quadratic(d.trim().parse().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }

    pub fn characteristic(&self) -> u32 {
        match *self {
            Field::Prime { p } => p,
            _ => 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime { p } => write!(f, "GF({p})"),
            Field::Quadratic { d } => write!(f, "Q(sqrt({d}))"),
        }
    }
}

fn parse_quadratic(t: &str, d: i64) -> Option<Scalar> {
    let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    let suffix = format!("*sqrt({d})");
    let Some(head) = compact.strip_suffix(&suffix) else {
        let a: Rational = compact.parse().ok()?;
        return Some(Scalar::Quadratic(Quad { a, b: Rational::ZERO, d }));
    };
    // split at the last sign that is not the leading one and not part of a
    // fraction
    let bytes = head.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if bytes[i] == b'+' || bytes[i] == b'-' {
            split = Some(i);
            break;
        }
    }
    let (a, b) = match split {
        Some(i) => {
            let a: Rational = head[..i].parse().ok()?;
            let b_str = &head[i..];
            let b_str = b_str.strip_prefix('+').unwrap_or(b_str);
            (a, b_str.parse().ok()?)
        }
        None => (Rational::ZERO, head.parse().ok()?),
    };
    Some(Scalar::Quadratic(Quad { a, b, d }))
}

/// Residue `v mod p`, `0 <= v < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    pub v: u32,
    pub p: u32,
}

impl Fp {
    fn add(&self, o: &Self) -> Self {
        let s = (self.v as u64 + o.v as u64) % self.p as u64;
        Fp { v: s as u32, p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp { v: ((self.v as u64 * o.v as u64) % self.p as u64) as u32, p: self.p }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, self.v as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(Fp { v: t0.rem_euclid(self.p as i64) as u32, p: self.p })
    }
}

/// `a + b*sqrt(d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quad {
    pub a: Rational,
    pub b: Rational,
    pub d: i64,
}

impl Quad {
    fn add(&self, o: &Self) -> Self {
        Quad { a: self.a.add(&o.a), b: self.b.add(&o.b), d: self.d }
    }
    fn neg(&self) -> Self {
        Quad { a: self.a.neg(), b: self.b.neg(), d: self.d }
    }
    fn mul(&self, o: &Self) -> Self {
        let dd = Rational::from_int(self.d);
        Quad {
            a: self.a.mul(&o.a).add(&dd.mul(&self.b.mul(&o.b))),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.a)),
            d: self.d,
        }
    }
    pub fn conj(&self) -> Self {
        Quad { a: self.a.clone(), b: self.b.neg(), d: self.d }
    }
    pub fn norm(&self) -> Rational {
        self.a.mul(&self.a).sub(&Rational::from_int(self.d).mul(&self.b.mul(&self.b)))
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        let ni = n.inv()?;
        let c = self.conj();
        Some(Quad { a: c.a.mul(&ni), b: c.b.mul(&ni), d: self.d })
    }
}

/// An element of one of the supported exact fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Prime(Fp),
    Quadratic(Quad),
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {a} vs {b}")
}

impl Scalar {
    pub fn rational(n: i64, d: i64) -> Self {
        Scalar::Rational(Rational::new(n, d))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime(x) => Field::Prime { p: x.p },
            Scalar::Quadratic(q) => Field::Quadratic { d: q.d },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime(x) => x.v == 0,
            Scalar::Quadratic(q) => q.a.is_zero() && q.b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime(x) => x.v == 1,
            Scalar::Quadratic(q) => q.a.is_one() && q.b.is_zero(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.add(b)),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.p == b.p => Scalar::Prime(a.add(b)),
            (Scalar::Quadratic(a), Scalar::Quadratic(b)) if a.d == b.d => {
                Scalar::Quadratic(a.add(b))
            }
            _ => mismatch(self, o),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Rational(a) => Scalar::Rational(a.neg()),
            Scalar::Prime(a) => Scalar::Prime(a.neg()),
            Scalar::Quadratic(a) => Scalar::Quadratic(a.neg()),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.sub(b)),
            _ => self.add(&o.neg()),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.mul(b)),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.p == b.p => Scalar::Prime(a.mul(b)),
            (Scalar::Quadratic(a), Scalar::Quadratic(b)) if a.d == b.d => {
                Scalar::Quadratic(a.mul(b))
            }
            _ => mismatch(self, o),
        }
    }

    /// Multiplicative inverse; `None` only for zero.
    pub fn inv(&self) -> Option<Self> {
        match self {
            Scalar::Rational(a) => a.inv().map(Scalar::Rational),
            Scalar::Prime(a) => a.inv().map(Scalar::Prime),
            Scalar::Quadratic(a) => a.inv().map(Scalar::Quadratic),
        }
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Galois conjugate in a quadratic field, identity elsewhere.
    pub fn conj(&self) -> Self {
        match self {
            Scalar::Quadratic(q) => Scalar::Quadratic(q.conj()),
            other => other.clone(),
        }
    }

    /// The rational value, if this scalar is (the image of) a rational
    /// number in characteristic zero.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Quadratic(q) if q.b.is_zero() => Some(q.a.clone()),
            _ => None,
        }
    }

    /// Maps this scalar into `target` along the canonical inclusion.
    pub fn promote(&self, target: Field) -> Result<Self, Error> {
        if target.contains(self) {
            return Ok(self.clone());
        }
        match (self, target) {
            (Scalar::Rational(r), _) => target
                .from_rational(r)
                .ok_or_else(|| Error::FieldMismatch(format!("{r} has no image in {target}"))),
            _ => Err(Error::FieldMismatch(format!("cannot map {self} into {target}"))),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Prime(x) => write!(f, "{} mod {}", x.v, x.p),
            Scalar::Quadratic(q) => {
                if q.b.signum() < 0 {
                    write!(f, "{}{}*sqrt({})", q.a, q.b, q.d)
                } else {
                    write!(f, "{}+{}*sqrt({})", q.a, q.b, q.d)
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar::add(self, o)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar::sub(self, o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        Scalar::mul(self, o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}
