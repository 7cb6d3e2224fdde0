//! Executable verifiers for the explicit descriptions of Galois closures:
//! quadratic algebras, `k x B`, `End(V)`, products, group rings and central
//! simple algebras.
//!
//! Each verifier recomputes the closure it needs. Where an explicit map
//! `phi: A^{(x)n} -> T` is known it is materialized as a matrix and checked
//! for three things: it kills the ideal, the induced map on the quotient is
//! bijective, and it intertwines the descended actions with the stated
//! actions on `T` on random samples.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{conjugate, matrix, norm, product_algebra, semisimple_from_dims, trivial, Element, Graded};
use crate::closure::{galois_closure_with, sn_character, ClosureOptions, GaloisClosure};
use crate::error::{Error, Result};
use crate::linalg::{rref, Field, Matrix, Scalar, SparseVec};
use crate::sym;

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub closure: ClosureOptions,
    pub seed: u64,
    pub samples: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { closure: ClosureOptions::default(), seed: 0, samples: 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub name: String,
    pub algebra: String,
    pub passed: bool,
    pub dims: BTreeMap<String, usize>,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<SubCheck>,
    /// Witness of the first failing sub-check.
    pub witness: Option<String>,
}

impl IsoReport {
    pub(crate) fn new(name: &str, algebra: &str, opts: &CheckOptions) -> Self {
        IsoReport {
            name: name.into(),
            algebra: algebra.into(),
            passed: true,
            dims: BTreeMap::new(),
            samples: opts.samples,
            seed: opts.seed,
            checks: Vec::new(),
            witness: None,
        }
    }

    pub(crate) fn dim(&mut self, key: &str, d: usize) {
        self.dims.insert(key.into(), d);
    }

    pub(crate) fn check(&mut self, name: &str, outcome: std::result::Result<(), String>) {
        let witness = outcome.err();
        if witness.is_some() && self.passed {
            self.passed = false;
            self.witness = witness.as_ref().map(|w| format!("{name}: {w}"));
        }
        self.checks.push(SubCheck { name: name.into(), passed: witness.is_none(), witness });
    }

    pub fn check_passed(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.passed)
    }
}

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond { Ok(()) } else { Err(witness()) }
}

fn random_vec(f: Field, dim: usize, rng: &mut ChaCha8Rng) -> SparseVec {
    SparseVec::from_dense(&(0..dim).map(|_| f.from_i64(rng.gen_range(-5..=5))).collect::<Vec<_>>())
}

/// `phi` restricted to ideal rows is zero.
fn kills_ideal(gc: &GaloisClosure, phi: &Matrix) -> std::result::Result<(), String> {
    match gc.ideal().basis().iter().position(|r| !phi.mul_vec(r).is_zero()) {
        Some(i) => Err(format!("ideal basis row {i} has nonzero image")),
        None => Ok(()),
    }
}

fn bijective(map: &Matrix, field: Field) -> std::result::Result<(), String> {
    let rank = rref(map, field).rank();
    ensure(map.is_square() && rank == map.ncols(), || {
        format!("induced map is {}x{} of rank {rank}", map.nrows(), map.ncols())
    })
}

/// Checks `Phi(Q x) = T(Phi x)` for random quotient vectors `x`.
fn intertwines(
    gc: &GaloisClosure,
    induced: &Matrix,
    q: &Matrix,
    t: impl Fn(&[Scalar]) -> Vec<Scalar>,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<(), Vec<Scalar>> {
    let f = gc.field();
    let x = random_vec(f, gc.dim(), rng);
    let lhs = induced.mul_vec(&q.mul_vec(&x)).to_dense(f);
    let rhs = t(&induced.mul_vec(&x).to_dense(f));
    if lhs == rhs { Ok(()) } else { Err(x.to_dense(f)) }
}

fn show(v: &[Scalar]) -> String {
    format!("[{}]", v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "))
}

/// `sgn(sigma) * n^{cycles(sigma)}` on each cycle type: the S_n character of
/// `V^{(x)n} (x) det^{-1}` with `dim V = n`.
fn endv_character(n: usize, f: Field) -> BTreeMap<String, Scalar> {
    sym::partitions(n)
        .into_iter()
        .map(|p| {
            let sign = if (n - p.len()).is_multiple_of(2) { 1 } else { -1 };
            (sym::partition_key(&p), f.from_i64(sign * (n as i64).pow(p.len() as u32)))
        })
        .collect()
}

fn compare_characters(
    got: &BTreeMap<String, Scalar>,
    want: &BTreeMap<String, Scalar>,
) -> std::result::Result<(), String> {
    for (k, w) in want {
        if got.get(k) != Some(w) {
            return Err(format!("class {k}: computed {:?}, expected {w}", got.get(k)));
        }
    }
    Ok(())
}

/// Quadratic algebras: `phi(b (x) c) = b conj(c)` induces `G(A) = A`.
pub fn check_quadratic(graded: &Graded, opts: &CheckOptions) -> Result<IsoReport> {
    let (alg, deg) = graded;
    if deg.degree() != 2 {
        return Err(Error::WrongDegree { expected: 2, got: deg.degree() });
    }
    let f = alg.field();
    let r = alg.rank();
    let gc = galois_closure_with(alg, deg, &opts.closure)?;
    let mut rep = IsoReport::new("quadratic", alg.name(), opts);
    rep.dim("ambient", gc.ambient_dim());
    rep.dim("closure", gc.dim());
    rep.dim("target", r);

    let conj: Vec<Element> = (0..r).map(|k| conjugate(alg, deg, &alg.basis_element(k))).collect::<Result<_>>()?;
    let mut laws = Ok(());
    'pairs: for i in 0..r {
        for j in 0..r {
            let (a, b) = (alg.basis_element(i), alg.basis_element(j));
            let nrm = alg.scalar(&norm(alg, deg, &a)?);
            if alg.mul(&a, &conj[i]) != nrm {
                laws = Err(format!("u{i} conj(u{i}) is not the norm"));
                break 'pairs;
            }
            if conjugate(alg, deg, &alg.mul(&a, &b))? != alg.mul(&conj[j], &conj[i]) {
                laws = Err(format!("conj(u{i} u{j}) != conj(u{j}) conj(u{i})"));
                break 'pairs;
            }
        }
    }
    rep.check("conjugation laws", laws);

    let cols: Vec<SparseVec> =
        (0..r * r).map(|x| SparseVec::from_dense(&alg.mul(&alg.basis_element(x / r), &conj[x % r]))).collect();
    let phi = Matrix::from_columns(r, &cols);
    rep.check("kills ideal", kills_ideal(&gc, &phi));
    let induced = phi.mul(&gc.lift_matrix());
    rep.check("bijective", bijective(&induced, f));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut places = Ok(());
    let mut swap = Ok(());
    for s in 0..opts.samples {
        let a1 = alg.random_element(&mut rng, 5);
        let a2 = alg.random_element(&mut rng, 5);
        let q = gc.act_elem(0, &a1).mul(&gc.act_elem(1, &a2));
        let c2 = conjugate(alg, deg, &a2)?;
        if places.is_ok() {
            places = intertwines(&gc, &induced, &q, |y| alg.mul(&alg.mul(&a1, y), &c2), &mut rng)
                .map_err(|x| format!("sample {s}: a1 = {}, a2 = {}, x = {}", show(&a1), show(&a2), show(&x)));
        }
        if swap.is_ok() {
            swap = intertwines(&gc, &induced, gc.sgen(0), |y| conjugate(alg, deg, y).unwrap(), &mut rng)
                .map_err(|x| format!("sample {s}: x = {}", show(&x)));
        }
    }
    rep.check("place actions", places);
    rep.check("swap is conjugation", swap);
    Ok(rep)
}

/// `A = k x B` with `B` quadratic: `G(A) = B^{+3}` via
/// `phi = (r1 b3 conj(b2), r2 b1 conj(b3), r3 b2 conj(b1))`.
pub fn check_cubic_split(b: &Graded, opts: &CheckOptions) -> Result<IsoReport> {
    let (balg, bdeg) = b;
    if bdeg.degree() != 2 || balg.rank() != 2 {
        return Err(Error::WrongShape(format!(
            "B must be rank 2 of degree 2, got rank {} degree {}",
            balg.rank(),
            bdeg.degree()
        )));
    }
    let f = balg.field();
    let rb = balg.rank();
    let (alg, deg) = product_algebra(vec![trivial(f, 1), b.clone()])?;
    let gc = galois_closure_with(&alg, &deg, &opts.closure)?;
    let mut rep = IsoReport::new("cubic-split", alg.name(), opts);
    rep.dim("ambient", gc.ambient_dim());
    rep.dim("closure", gc.dim());
    rep.dim("target", 3 * rb);

    let bconj = |x: &[Scalar]| conjugate(balg, bdeg, x).unwrap();
    let bmul = |x: &[Scalar], y: &[Scalar]| balg.mul(x, y);
    // element of A as (r, b)
    let split = |a: &[Scalar]| (a[0].clone(), a[1..].to_vec());
    let phi_pure = |x: [&[Scalar]; 3]| -> Vec<Scalar> {
        let [(r1, b1), (r2, b2), (r3, b3)] = x.map(split);
        let mut out = balg.scale(&r1, &bmul(&b3, &bconj(&b2)));
        out.extend(balg.scale(&r2, &bmul(&b1, &bconj(&b3))));
        out.extend(balg.scale(&r3, &bmul(&b2, &bconj(&b1))));
        out
    };
    let tp = gc.tensor_power();
    let cols: Vec<SparseVec> = (0..tp.dim())
        .map(|x| {
            let d = tp.digits(x);
            let e = d.iter().map(|&k| alg.basis_element(k)).collect::<Vec<_>>();
            SparseVec::from_dense(&phi_pure([&e[0], &e[1], &e[2]]))
        })
        .collect();
    let phi = Matrix::from_columns(3 * rb, &cols);
    rep.check("kills ideal", kills_ideal(&gc, &phi));
    let induced = phi.mul(&gc.lift_matrix());
    rep.check("bijective", bijective(&induced, f));

    let comps = |y: &[Scalar]| -> [Vec<Scalar>; 3] { [y[..rb].to_vec(), y[rb..2 * rb].to_vec(), y[2 * rb..].to_vec()] };
    let join = |c: [Vec<Scalar>; 3]| c.concat();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut laws = [Ok(()), Ok(()), Ok(())];
    for s in 0..opts.samples {
        let a = alg.random_element(&mut rng, 5);
        let (r, c) = split(&a);
        let cc = bconj(&c);
        for (place, law) in laws.iter_mut().enumerate() {
            if law.is_err() {
                continue;
            }
            let target = |y: &[Scalar]| {
                let [b1, b2, b3] = comps(y);
                join(match place {
                    0 => [balg.scale(&r, &b1), bmul(&c, &b2), bmul(&b3, &cc)],
                    1 => [bmul(&b1, &cc), balg.scale(&r, &b2), bmul(&c, &b3)],
                    _ => [bmul(&c, &b1), bmul(&b2, &cc), balg.scale(&r, &b3)],
                })
            };
            *law = intertwines(&gc, &induced, &gc.act_elem(place, &a), target, &mut rng)
                .map_err(|x| format!("sample {s}: a = {}, x = {}", show(&a), show(&x)));
        }
    }
    let [l1, l2, l3] = laws;
    rep.check("place 1 action", l1);
    rep.check("place 2 action", l2);
    rep.check("place 3 action", l3);

    // sigma moves component i to position sigma(i), conjugating when odd
    let mut sn = Ok(());
    'perms: for sigma in sym::all(3) {
        let q = gc.perm(&sigma)?;
        let odd = sym::sign(&sigma) < 0;
        for s in 0..opts.samples {
            let target = |y: &[Scalar]| {
                let b = comps(y);
                let mut out: [Vec<Scalar>; 3] = Default::default();
                for i in 0..3 {
                    out[sigma[i]] = if odd { bconj(&b[i]) } else { b[i].clone() };
                }
                join(out)
            };
            if let Err(x) = intertwines(&gc, &induced, &q, target, &mut rng) {
                sn = Err(format!("sigma = {sigma:?}, sample {s}: x = {}", show(&x)));
                break 'perms;
            }
        }
    }
    rep.check("S_3 action", sn);
    Ok(rep)
}

/// `A = End(V)`, `dim V = n`: `phi(e_{i1 j1} (x) .. ) = sgn(j) u_{i1} (x) ..`
/// when `j` is a permutation and 0 otherwise, so `G(A) = V^{(x)n} (x) det^{-1}`.
pub fn check_endv(n: usize, field: Field, opts: &CheckOptions) -> Result<IsoReport> {
    if n < 2 {
        return Err(Error::InvalidDegree(format!("End(V) check needs n >= 2, got {n}")));
    }
    let ambient = n.checked_pow(2 * n as u32).unwrap_or(usize::MAX);
    opts.closure.check_dim(ambient)?;
    let (alg, deg) = matrix(field, n);
    let gc = galois_closure_with(&alg, &deg, &opts.closure)?;
    let tp = gc.tensor_power();
    let tdim = n.pow(n as u32);
    let mut rep = IsoReport::new("endv", alg.name(), opts);
    rep.dim("ambient", gc.ambient_dim());
    rep.dim("closure", gc.dim());
    rep.dim("target", tdim);

    // big-endian digits base n on the target V^{(x)n}
    let vdigits = |mut x: usize| {
        let mut d = vec![0; n];
        for k in (0..n).rev() {
            d[k] = x % n;
            x /= n;
        }
        d
    };
    let vindex = |d: &[usize]| d.iter().fold(0, |acc, &k| acc * n + k);
    let mono = |i: &[usize], j: &[usize]| tp.index(&i.iter().zip(j).map(|(&a, &b)| a * n + b).collect::<Vec<_>>());

    let cols: Vec<SparseVec> = (0..tp.dim())
        .map(|x| {
            let d = tp.digits(x);
            let i: Vec<usize> = d.iter().map(|k| k / n).collect();
            let j: Vec<usize> = d.iter().map(|k| k % n).collect();
            if sym::validate(&j).is_ok() {
                SparseVec::from_unsorted(tdim, vec![(vindex(&i), field.from_i64(sym::sign(&j)))])
            } else {
                SparseVec::zero(tdim)
            }
        })
        .collect();
    let phi = Matrix::from_columns(tdim, &cols);
    rep.check("kills ideal", kills_ideal(&gc, &phi));
    let induced = phi.mul(&gc.lift_matrix());
    rep.check("bijective", bijective(&induced, field));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut places = Ok(());
    'places: for s in 0..opts.samples {
        let a = alg.random_element(&mut rng, 5);
        for place in 0..n {
            let target = |y: &[Scalar]| {
                let mut out = vec![field.zero(); tdim];
                for (t, yt) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    let mut d = vdigits(t);
                    let col = d[place];
                    for p in 0..n {
                        d[place] = p;
                        let o = vindex(&d);
                        out[o] = out[o].add(&a[p * n + col].mul(yt));
                    }
                }
                out
            };
            if let Err(x) = intertwines(&gc, &induced, &gc.act_elem(place, &a), target, &mut rng) {
                places = Err(format!("sample {s}, place {place}: a = {}, x = {}", show(&a), show(&x)));
                break 'places;
            }
        }
    }
    rep.check("place actions", places);

    // sigma acts on the target by sgn(sigma) times moving factor i to sigma(i)
    let mut sn = Ok(());
    'perms: for sigma in sym::all(n) {
        let q = gc.perm(&sigma)?;
        let sg = field.from_i64(sym::sign(&sigma));
        let target = |y: &[Scalar]| {
            let mut out = vec![field.zero(); tdim];
            for (t, yt) in y.iter().enumerate() {
                let d = vdigits(t);
                let mut e = vec![0; n];
                for i in 0..n {
                    e[sigma[i]] = d[i];
                }
                out[vindex(&e)] = yt.mul(&sg);
            }
            out
        };
        for s in 0..opts.samples.min(4) {
            if let Err(x) = intertwines(&gc, &induced, &q, target, &mut rng) {
                sn = Err(format!("sigma = {sigma:?}, sample {s}: x = {}", show(&x)));
                break 'perms;
            }
        }
    }
    rep.check("sign-twisted S_n action", sn);

    // (e_{i1 tau(1)})^(1) .. = sgn(tau) (e_{i1 1})^(1) .. for bijective tau, else 0
    let ident = sym::identity(n);
    let total = tdim * tdim;
    let exhaustive = total <= 4096;
    let cases: Vec<(usize, usize)> = if exhaustive {
        (0..total).map(|c| (c / tdim, c % tdim)).collect()
    } else {
        (0..opts.samples * 8).map(|_| (rng.gen_range(0..tdim), rng.gen_range(0..tdim))).collect()
    };
    let mut collapse = Ok(());
    let mut nonbijective = 0;
    for (ii, tt) in cases {
        let (i, tau) = (vdigits(ii), vdigits(tt));
        let lhs = gc.project(&SparseVec::unit(tp.dim(), mono(&i, &tau), field));
        let rhs = if sym::validate(&tau).is_ok() {
            gc.project(&SparseVec::unit(tp.dim(), mono(&i, &ident), field)).scale(&field.from_i64(sym::sign(&tau)))
        } else {
            nonbijective += 1;
            SparseVec::zero(gc.dim())
        };
        if lhs != rhs {
            collapse = Err(format!("i = {i:?}, tau = {tau:?}"));
            break;
        }
    }
    if collapse.is_ok() && nonbijective == 0 {
        collapse = Err("no non-bijective tau was sampled".into());
    }
    rep.check("monomial collapse", collapse);

    let mut section = Ok(());
    for ii in 0..tdim {
        let i = vdigits(ii);
        let img = induced.mul_vec(&gc.project(&SparseVec::unit(tp.dim(), mono(&i, &ident), field)));
        if img != SparseVec::unit(tdim, ii, field) {
            section = Err(format!("i = {i:?}"));
            break;
        }
    }
    rep.check("section", section);
    rep.check("character", compare_characters(&sn_character(&gc), &endv_character(n, field)));
    Ok(rep)
}

/// Induced character from `S_{n_1} x .. x S_{n_k}` (consecutive blocks) to
/// `S_n`, by the coset sum over all of `S_n`. Each factor character is given
/// on cycle types.
pub fn induced_character(
    degrees: &[usize],
    chars: &[BTreeMap<String, Scalar>],
    field: Field,
) -> Result<BTreeMap<String, Scalar>> {
    let n: usize = degrees.iter().sum();
    let mut offsets = vec![0];
    for d in degrees {
        offsets.push(offsets.last().unwrap() + d);
    }
    let order: u64 = degrees.iter().map(|&d| sym::factorial(d)).product();
    let inv_order = field
        .from_i64(order as i64)
        .inv()
        .ok_or_else(|| Error::InvalidDegree(format!("|H| = {order} is not invertible in {field}")))?;
    let group = sym::all(n);
    let mut out = BTreeMap::new();
    for p in sym::partitions(n) {
        let sigma = sym::word_to_perm(n, &sym::representative_word(&p));
        let mut sum = field.zero();
        for g in &group {
            let h = sym::compose(&sym::inverse(g), &sym::compose(&sigma, g));
            let mut term = field.one();
            let mut inside = true;
            for (b, ch) in chars.iter().enumerate() {
                let (lo, hi) = (offsets[b], offsets[b + 1]);
                if (lo..hi).any(|x| !(lo..hi).contains(&h[x])) {
                    inside = false;
                    break;
                }
                let block: Vec<usize> = (lo..hi).map(|x| h[x] - lo).collect();
                let key = sym::partition_key(&sym::cycle_type(&block));
                term = term.mul(&ch[&key]);
            }
            if inside {
                sum = sum.add(&term);
            }
        }
        out.insert(sym::partition_key(&p), sum.mul(&inv_order));
    }
    Ok(out)
}

/// Product formula: `dim G(prod A_i) = multinomial * prod dim G(A_i)` and the
/// S_n character of the direct computation equals the induced character.
pub fn check_product_formula(factors: &[Graded], opts: &CheckOptions) -> Result<IsoReport> {
    if factors.is_empty() || factors.len() > 3 {
        return Err(Error::MalformedSpec(format!("product check takes 1 to 3 factors, got {}", factors.len())));
    }
    let degrees: Vec<usize> = factors.iter().map(|(_, d)| d.degree()).collect();
    let n: usize = degrees.iter().sum();
    if n > 5 {
        return Err(Error::InvalidDegree(format!("induction oracle enumerates S_n, needs n <= 5, got {n}")));
    }
    let (alg, deg) = product_algebra(factors.to_vec())?;
    let f = alg.field();
    let gc = galois_closure_with(&alg, &deg, &opts.closure)?;
    let parts: Vec<GaloisClosure> =
        factors.iter().map(|(a, d)| galois_closure_with(a, d, &opts.closure)).collect::<Result<_>>()?;
    let mut rep = IsoReport::new("product-formula", alg.name(), opts);
    rep.dim("ambient", gc.ambient_dim());
    rep.dim("closure", gc.dim());
    let mult = sym::factorial(n) / degrees.iter().map(|&d| sym::factorial(d)).product::<u64>();
    let expected = mult as usize * parts.iter().map(|p| p.dim()).product::<usize>();
    for (i, p) in parts.iter().enumerate() {
        rep.dim(&format!("factor{}", i + 1), p.dim());
    }
    rep.dim("expected", expected);
    rep.check("dimension", ensure(gc.dim() == expected, || format!("{} != {expected}", gc.dim())));
    let chars: Vec<_> = parts.iter().map(sn_character).collect();
    let induced = induced_character(&degrees, &chars, f)?;
    rep.check("character", compare_characters(&sn_character(&gc), &induced));
    Ok(rep)
}

/// Split semisimple `prod Mat_{n_rho}`: `dim G = N prod n_rho^{n_rho}` with
/// `N = (sum n_rho)! / prod n_rho!`.
pub fn check_group_ring(dims: &[usize], field: Field, opts: &CheckOptions) -> Result<IsoReport> {
    let (alg, deg) = semisimple_from_dims(field, dims)?;
    let gc = galois_closure_with(&alg, &deg, &opts.closure)?;
    let n: usize = dims.iter().sum();
    let mult = sym::factorial(n) / dims.iter().map(|&d| sym::factorial(d)).product::<u64>();
    let expected = mult as usize * dims.iter().map(|&d| d.pow(d as u32)).product::<usize>();
    let mut rep = IsoReport::new("group-ring", alg.name(), opts);
    rep.dim("ambient", gc.ambient_dim());
    rep.dim("closure", gc.dim());
    rep.dim("expected", expected);
    rep.check("dimension", ensure(gc.dim() == expected, || format!("{} != {expected}", gc.dim())));
    Ok(rep)
}

/// A degree-n algebra of rank `n^2` (central simple): `dim G = n^n`, and the
/// S_n character is the one of the split form `Mat_n`.
pub fn check_csa_dimension(graded: &Graded, opts: &CheckOptions) -> Result<IsoReport> {
    let (alg, deg) = graded;
    let n = deg.degree();
    if alg.rank() != n * n {
        return Err(Error::WrongShape(format!("rank {} is not the square of the degree {n}", alg.rank())));
    }
    let gc = galois_closure_with(alg, deg, &opts.closure)?;
    let expected = n.pow(n as u32);
    let mut rep = IsoReport::new("csa-dimension", alg.name(), opts);
    rep.dim("ambient", gc.ambient_dim());
    rep.dim("closure", gc.dim());
    rep.dim("expected", expected);
    rep.check("dimension", ensure(gc.dim() == expected, || format!("{} != {expected}", gc.dim())));
    rep.check("character", compare_characters(&sn_character(&gc), &endv_character(n, alg.field())));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic3, dual, quadratic, quaternion, split};

    const Q: Field = Field::Rational;

    fn assert_pass(r: &IsoReport) {
        assert!(r.passed, "{} on {}: {:?}", r.name, r.algebra, r.witness);
        assert!(r.checks.iter().all(|c| c.passed));
    }

    #[test]
    fn quadratic_examples() {
        let opts = CheckOptions::default();
        for g in [split(Q, 2), quadratic(Q, 2), dual(Q), quaternion(Q, -1, -1).unwrap()] {
            let r = check_quadratic(&g, &opts).unwrap();
            assert_pass(&r);
            assert_eq!(r.dims["closure"], g.0.rank());
        }
        assert_eq!(check_quadratic(&split(Q, 3), &opts).unwrap_err(), Error::WrongDegree { expected: 2, got: 3 });
    }

    #[test]
    fn cubic_split_examples() {
        let opts = CheckOptions::default();
        for b in [split(Q, 2), quadratic(Q, 2), dual(Q)] {
            let r = check_cubic_split(&b, &opts).unwrap();
            assert_pass(&r);
            assert_eq!(r.dims["closure"], 6);
        }
        assert!(matches!(check_cubic_split(&matrix(Q, 2), &opts), Err(Error::WrongShape(_))));
    }

    #[test]
    fn endv_two() {
        let r = check_endv(2, Q, &CheckOptions::default()).unwrap();
        assert_pass(&r);
        assert_eq!(r.dims["closure"], 4);
        assert_eq!(r.check_passed("monomial collapse"), Some(true));
    }

    #[test]
    fn broken_map_is_reported() {
        // phi(b (x) c) = b c without the conjugation does not kill the ideal
        let (alg, deg) = quadratic(Q, 3);
        let gc = galois_closure_with(&alg, &deg, &ClosureOptions::default()).unwrap();
        let cols: Vec<SparseVec> = (0..4)
            .map(|x| SparseVec::from_dense(&alg.mul(&alg.basis_element(x / 2), &alg.basis_element(x % 2))))
            .collect();
        assert!(kills_ideal(&gc, &Matrix::from_columns(2, &cols)).is_err());
    }

    #[test]
    fn induction_oracle_small() {
        // Ind from S_1 x S_1 of the trivial character is the regular character of S_2
        let one: BTreeMap<String, Scalar> = [("1".to_string(), Q.one())].into();
        let ind = induced_character(&[1, 1], &[one.clone(), one.clone()], Q).unwrap();
        assert_eq!(ind["1,1"], Q.from_i64(2));
        assert_eq!(ind["2"], Q.zero());
        // from S_2 x S_1, trivial: permutation character on 3 points
        let triv2: BTreeMap<String, Scalar> = [("1,1".to_string(), Q.one()), ("2".to_string(), Q.one())].into();
        let ind = induced_character(&[2, 1], &[triv2, one], Q).unwrap();
        assert_eq!(ind["1,1,1"], Q.from_i64(3));
        assert_eq!(ind["2,1"], Q.from_i64(1));
        assert_eq!(ind["3"], Q.zero());
    }

    #[test]
    fn product_and_group_ring() {
        let opts = CheckOptions::default();
        let r = check_product_formula(&[trivial(Q, 1), trivial(Q, 1)], &opts).unwrap();
        assert_pass(&r);
        assert_eq!(r.dims["closure"], 2);
        let r = check_product_formula(&[trivial(Q, 1), quadratic(Q, 5)], &opts).unwrap();
        assert_pass(&r);
        assert_eq!(r.dims["closure"], 6);
        for (dims, want) in [(vec![1], 1), (vec![1, 1], 2)] {
            let r = check_group_ring(&dims, Q, &opts).unwrap();
            assert_pass(&r);
            assert_eq!(r.dims["closure"], want);
        }
    }

    #[test]
    fn csa_quaternions_and_split() {
        let opts = CheckOptions::default();
        assert_pass(&check_csa_dimension(&quaternion(Q, -1, -1).unwrap(), &opts).unwrap());
        assert_pass(&check_csa_dimension(&matrix(Q, 2), &opts).unwrap());
        assert!(cyclic3(Q).is_ok());
        assert!(matches!(check_csa_dimension(&split(Q, 2), &opts), Err(Error::WrongShape(_))));
    }
}
