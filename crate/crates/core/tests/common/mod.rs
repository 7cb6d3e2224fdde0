//! Property checks shared by the proptest suite and the acceptance gate.
//! Every check derives its inputs from a `u64` seed, so both drivers agree
//! on what a sample is.

#![allow(dead_code)]

use std::sync::OnceLock;

use gclose::algebra::{matrix, product_algebra, quadratic, quaternion, trivial, Element, Graded};
use gclose::closure::{galois_closure, GaloisClosure};
use gclose::hermitian::{diagonal_generator, hermitian_space, mat_action, separate_generators};
use gclose::linalg::{Field, Matrix, SparseVec};
use gclose::sym;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const Q: Field = Field::Rational;

pub struct Fixture {
    pub name: &'static str,
    pub gc: GaloisClosure,
}

fn build(name: &'static str, g: Graded) -> Fixture {
    Fixture { name, gc: galois_closure(&g.0, &g.1).expect("fixture closure") }
}

/// Non-commutative, non-split and degree-4 cases.
pub fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        vec![
            build("k x Mat_2", product_algebra(vec![trivial(Q, 1), matrix(Q, 2)]).unwrap()),
            build("quaternions (-1,-1)", quaternion(Q, -1, -1).unwrap()),
            build("k x k x Q(sqrt 2)", product_algebra(vec![trivial(Q, 1), trivial(Q, 1), quadratic(Q, 2)]).unwrap()),
        ]
    })
}

pub type Check = fn(&GaloisClosure, u64) -> Result<(), String>;

pub const PROPERTIES: &[(&str, Check)] = &[
    ("ideal stability", ideal_stability),
    ("twisted commutation", twisted_commutation),
    ("place homomorphism", place_homomorphism),
    ("braid relations", braid_relations),
    ("relation membership", relation_membership),
    ("Mat_m(A) action", mat_action_laws),
];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn elem(gc: &GaloisClosure, r: &mut ChaCha8Rng) -> Element {
    gc.algebra().random_element(r, 4)
}

/// A random ideal element and its images under a random place operator and
/// a random adjacent transposition stay in the ideal.
pub fn ideal_stability(gc: &GaloisClosure, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let rows = gc.ideal().basis();
    if rows.is_empty() {
        return Ok(());
    }
    let mut v = SparseVec::zero(gc.ambient_dim());
    for _ in 0..6 {
        let k = r.gen_range(0..rows.len());
        v = v.axpy(&Q.from_i64(r.gen_range(-5..=5)), &rows[k]);
    }
    let tp = gc.tensor_power();
    let a = elem(gc, &mut r);
    let i = r.gen_range(0..gc.n());
    if !gc.ideal().contains(&tp.apply_left(&a, i, &v)) {
        return Err(format!("L(a, {i}) leaves the ideal"));
    }
    let t = r.gen_range(0..gc.n() - 1);
    if !gc.ideal().contains(&tp.apply_perm(&sym::adjacent(gc.n(), t), &v)) {
        return Err(format!("transposition {t} leaves the ideal"));
    }
    Ok(())
}

/// `s_t act(a, i) = act(a, s_t(i)) s_t`.
pub fn twisted_commutation(gc: &GaloisClosure, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let a = elem(gc, &mut r);
    let n = gc.n();
    for t in 0..n - 1 {
        let s = sym::adjacent(n, t);
        for i in 0..n {
            if gc.sgen(t).mul(&gc.act_elem(i, &a)) != gc.act_elem(s[i], &a).mul(gc.sgen(t)) {
                return Err(format!("t = {t}, place {i}"));
            }
        }
    }
    Ok(())
}

/// `act(ab, i) = act(a, i) act(b, i)`, `act(1, i) = 1`, and different places commute.
pub fn place_homomorphism(gc: &GaloisClosure, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let alg = gc.algebra();
    let (a, b) = (elem(gc, &mut r), elem(gc, &mut r));
    let id = Matrix::identity(gc.dim(), Q);
    for i in 0..gc.n() {
        if gc.act_elem(i, &alg.mul(&a, &b)) != gc.act_elem(i, &a).mul(&gc.act_elem(i, &b)) {
            return Err(format!("multiplicativity at place {i}"));
        }
        if gc.act_elem(i, &alg.one()) != id {
            return Err(format!("unit at place {i}"));
        }
        for j in 0..gc.n() {
            let (x, y) = (gc.act_elem(i, &a), gc.act_elem(j, &b));
            if i != j && x.mul(&y) != y.mul(&x) {
                return Err(format!("places {i} and {j} do not commute"));
            }
        }
    }
    Ok(())
}

/// Coxeter relations of the descended transpositions. The seed only picks
/// which relation is tested first.
pub fn braid_relations(gc: &GaloisClosure, seed: u64) -> Result<(), String> {
    let n = gc.n();
    let id = Matrix::identity(gc.dim(), Q);
    let s = gc.sgens();
    let start = (seed as usize) % n.max(1);
    for k in 0..n - 1 {
        let t = (start + k) % (n - 1);
        if s[t].mul(&s[t]) != id {
            return Err(format!("s_{t}^2 != 1"));
        }
        if t + 1 < n - 1 && s[t].mul(&s[t + 1]).mul(&s[t]) != s[t + 1].mul(&s[t]).mul(&s[t + 1]) {
            return Err(format!("braid relation at {t}"));
        }
        for u in t + 2..n - 1 {
            if s[t].mul(&s[u]) != s[u].mul(&s[t]) {
                return Err(format!("s_{t} and s_{u} do not commute"));
            }
        }
    }
    Ok(())
}

/// `e_j(a^(1), .., a^(n)) - s_j(a)` lies in the ideal for every `j`.
pub fn relation_membership(gc: &GaloisClosure, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let a = elem(gc, &mut r);
    for j in 1..=gc.n() {
        if !gc.verify_membership(&a, j).map_err(|e| e.to_string())? {
            return Err(format!("j = {j}"));
        }
    }
    Ok(())
}

/// With `U` of rank 2: a random `gamma` preserves `H` and commutes with the
/// diagonal action; a pure tensor `a (x) g` commutes with both actions.
pub fn mat_action_laws(gc: &GaloisClosure, seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let m = 2;
    let alg = gc.algebra();
    let h = hermitian_space(gc, m, &Default::default()).map_err(|e| e.to_string())?;
    let gamma: Vec<Vec<Element>> = (0..m).map(|_| (0..m).map(|_| elem(gc, &mut r)).collect()).collect();
    let op = mat_action(gc, m, &gamma).map_err(|e| e.to_string())?;
    if h.restricted_trace(&op).is_none() {
        return Err("gamma does not preserve H".into());
    }
    let a = elem(gc, &mut r);
    let g: Vec<i64> = (0..m * m).map(|_| r.gen_range(-3..=3)).collect();
    let pure: Vec<Vec<Element>> =
        (0..m).map(|i| (0..m).map(|j| alg.scale(&Q.from_i64(g[i * m + j]), &a)).collect()).collect();
    let pop = mat_action(gc, m, &pure).map_err(|e| e.to_string())?;
    for t in 0..gc.n() - 1 {
        let d = diagonal_generator(gc, m, t).map_err(|e| e.to_string())?;
        if op.mul(&d) != d.mul(&op) {
            return Err(format!("gamma does not commute with D({t})"));
        }
        let (s1, s2) = separate_generators(gc, m, t).map_err(|e| e.to_string())?;
        if pop.mul(&s1) != s1.mul(&pop) || pop.mul(&s2) != s2.mul(&pop) {
            return Err(format!("pure tensor does not commute with the actions of {t}"));
        }
    }
    Ok(())
}
