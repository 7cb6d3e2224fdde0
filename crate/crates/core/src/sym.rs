//! Permutations of `0..n` stored as image vectors, `sigma[i]` = image of `i`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn validate(sigma: &[usize]) -> Result<()> {
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        if s >= sigma.len() || std::mem::replace(&mut seen[s], true) {
            return Err(Error::InvalidPermutation(sigma.to_vec()));
        }
    }
    Ok(())
}

/// `(sigma tau)(i) = sigma(tau(i))`.
pub fn compose(sigma: &[usize], tau: &[usize]) -> Perm {
    tau.iter().map(|&t| sigma[t]).collect()
}

pub fn inverse(sigma: &[usize]) -> Perm {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

/// The transposition `(t, t + 1)`.
pub fn adjacent(n: usize, t: usize) -> Perm {
    let mut p = identity(n);
    p.swap(t, t + 1);
    p
}

/// Cycle lengths in descending order.
pub fn cycle_type(sigma: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; sigma.len()];
    let mut out = Vec::new();
    for i in 0..sigma.len() {
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = sigma[j];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

pub fn sign(sigma: &[usize]) -> i64 {
    let even = cycle_type(sigma).iter().map(|l| l - 1).sum::<usize>() % 2 == 0;
    if even { 1 } else { -1 }
}

/// All permutations of `0..n` in lexicographic order.
pub fn all(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p = identity(n);
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Partitions of n in descending lexicographic order, parts descending.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Adjacent-transposition word for the representative of a cycle type:
/// consecutive blocks, each a product `t_s t_{s+1} .. t_{s+l-2}`.
pub fn representative_word(partition: &[usize]) -> Vec<usize> {
    let mut word = Vec::new();
    let mut start = 0;
    for &l in partition {
        word.extend(start..start + l - 1);
        start += l;
    }
    word
}

/// Evaluates a word of adjacent transpositions (leftmost applied last).
pub fn word_to_perm(n: usize, word: &[usize]) -> Perm {
    word.iter().fold(identity(n), |acc, &t| compose(&acc, &adjacent(n, t)))
}

/// `"3,1,1"`.
pub fn partition_key(partition: &[usize]) -> String {
    partition.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

/// Size of the conjugacy class with the given cycle type.
pub fn class_size(partition: &[usize]) -> u64 {
    let n: usize = partition.iter().sum();
    let mut denom: u64 = 1;
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for &p in partition {
        denom *= p as u64;
        *counts.entry(p).or_default() += 1;
    }
    for &c in counts.values() {
        denom *= factorial(c as usize);
    }
    factorial(n) / denom
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(all(4).len(), 24);
        assert_eq!(partitions(4), vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        let total: u64 = partitions(5).iter().map(|p| class_size(p)).sum();
        assert_eq!(total, 120);
        assert_eq!(binomial(6, 3), 20);
    }

    #[test]
    fn representatives_have_their_cycle_type() {
        for n in 1..=6 {
            for p in partitions(n) {
                let sigma = word_to_perm(n, &representative_word(&p));
                assert_eq!(cycle_type(&sigma), p);
            }
        }
    }

    #[test]
    fn group_laws() {
        let ps = all(4);
        for s in &ps {
            assert_eq!(compose(s, &inverse(s)), identity(4));
            for t in &ps {
                assert_eq!(sign(&compose(s, t)), sign(s) * sign(t));
            }
        }
        assert!(validate(&[0, 0]).is_err());
        assert!(validate(&[1, 2]).is_err());
    }
}
