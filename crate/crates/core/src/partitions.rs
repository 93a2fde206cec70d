//! Integer partitions and the statistics attached to them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize};

use crate::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty sequence is
/// the zero partition.
///
/// Serializes as a plain integer array, e.g. `[3,1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition, dropping trailing zeros. Fails if the parts are
    /// not weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Format(format!(
                "partition parts must be weakly decreasing and positive: {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// |λ|
    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// l(λ)
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Multiplicities `(part, m_part)` in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn transpose(&self) -> Partition {
        transpose(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Shorthand used throughout the tests: `part(&[2, 1])`.
///
/// # Panics
/// If `parts` is not a valid partition.
pub fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition")
}

/// All partitions of `d` in reverse-lexicographic order:
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
///
/// This order is part of the public contract; tables and cache files depend
/// on it.
pub fn enumerate_partitions(d: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for first in (1..=rem.min(max)).rev() {
            prefix.push(first);
            rec(rem - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// The statistics of a partition used by the amplitude and the free energy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionStats {
    pub degree: usize,
    pub length: usize,
    /// |Aut λ| = Π m_i(λ)!
    pub aut: BigInt,
    /// l(λ)! / |Aut λ|
    pub u: BigInt,
    /// |Aut λ| · Π λ_i
    pub z: BigInt,
    /// Σ λ_i (λ_i − 2i + 1); always even.
    pub k: i64,
    /// (−1)^{l−1} (l−1)! / |Aut λ|
    pub theta: BigRational,
    /// Σ (i−1) λ_i
    pub n_lambda: u64,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn stats(lambda: &Partition) -> PartitionStats {
    let parts = lambda.parts();
    let length = parts.len();
    let aut = lambda
        .multiplicities()
        .iter()
        .fold(BigInt::one(), |acc, &(_, m)| acc * factorial(m));
    let k = k_lambda(lambda);
    let n_lambda = n_lambda(lambda);
    if length == 0 {
        // u, θ, z of the zero partition are fixed to 1 by convention.
        return PartitionStats {
            degree: 0,
            length: 0,
            aut,
            u: BigInt::one(),
            z: BigInt::one(),
            k,
            theta: BigRational::one(),
            n_lambda,
        };
    }
    let u = factorial(length) / &aut;
    let z = parts.iter().fold(aut.clone(), |acc, &p| acc * BigInt::from(p));
    let sign = if (length - 1).is_multiple_of(2) { 1 } else { -1 };
    let theta = BigRational::new(BigInt::from(sign) * factorial(length - 1), aut.clone());
    PartitionStats {
        degree: lambda.degree(),
        length,
        aut,
        u,
        z,
        k,
        theta,
        n_lambda,
    }
}

/// k_λ = Σ_i λ_i (λ_i − 2i + 1), with 1-based rows.
pub fn k_lambda(lambda: &Partition) -> i64 {
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let p = p as i64;
            p * (p - 2 * (i as i64 + 1) + 1)
        })
        .sum()
}

/// n(λ) = Σ_i (i − 1) λ_i.
pub fn n_lambda(lambda: &Partition) -> u64 {
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| (i * p) as u64)
        .sum()
}

/// θ_λ as an exact rational.
pub fn theta(lambda: &Partition) -> BigRational {
    stats(lambda).theta
}

/// (λ^t)_j = #{i : λ_i ≥ j}.
pub fn transpose(lambda: &Partition) -> Partition {
    let width = lambda.part(0);
    let parts = (1..=width)
        .map(|j| lambda.parts().iter().take_while(|&&p| p >= j).count())
        .collect();
    Partition(parts)
}

/// Hook lengths `λ_i + (λ^t)_j − i − j + 1`, one per cell, in row-major
/// order.
pub fn hooks(lambda: &Partition) -> Vec<usize> {
    let t = transpose(lambda);
    let mut out = Vec::with_capacity(lambda.degree());
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            // 0-based: (λ_i − j − 1) cells to the right, (λ^t_j − i − 1) below.
            out.push(row - j + t.part(j) - i - 1);
        }
    }
    out
}

/// Symmetric-group character χ_λ(ρ) by the Murnaghan–Nakayama rule,
/// implemented on beta-sets: removing a border strip of length r moves one
/// bead from position b to the free position b − r, with sign given by the
/// parity of beads jumped over.
pub fn mn_character(lambda: &Partition, rho: &Partition) -> Result<BigInt> {
    if lambda.degree() != rho.degree() {
        return Err(Error::DegreeMismatch(lambda.degree(), rho.degree()));
    }
    let l = lambda.length();
    let beta: Vec<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + l - 1 - i)
        .collect();
    Ok(mn_beta(beta, rho.parts()))
}

fn mn_beta(beta: Vec<usize>, rho: &[usize]) -> BigInt {
    let Some((&r, rest)) = rho.split_first() else {
        return BigInt::one();
    };
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let jumped = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        let val = mn_beta(next, rest);
        if jumped % 2 == 0 {
            total += val;
        } else {
            total -= val;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: every weakly decreasing positive sequence summing to `d`,
    /// built independently of `enumerate_partitions`.
    fn brute_force(d: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::<usize>::new(), d)];
        while let Some((seq, rem)) = stack.pop() {
            if rem == 0 {
                out.push(seq);
                continue;
            }
            let cap = seq.last().copied().unwrap_or(rem).min(rem);
            for next in 1..=cap {
                let mut s = seq.clone();
                s.push(next);
                stack.push((s, rem - next));
            }
        }
        out
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(1), vec![part(&[1])]);
        let four: Vec<Vec<usize>> = enumerate_partitions(4).iter().map(|p| p.0.clone()).collect();
        assert_eq!(four, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for d in 0..=20 {
            let ours = enumerate_partitions(d);
            let mut brute = brute_force(d);
            assert_eq!(ours.len(), brute.len(), "d = {d}");
            brute.sort_by(|a, b| b.cmp(a));
            let ours: Vec<Vec<usize>> = ours.into_iter().map(|p| p.0).collect();
            assert_eq!(ours, brute, "d = {d}: reverse-lex order");
        }
    }

    #[test]
    fn stats_examples() {
        let s = stats(&part(&[2, 1]));
        assert_eq!(s.k, 0);
        assert_eq!(s.z, BigInt::from(2));
        assert_eq!(s.theta, BigRational::from_integer((-1).into()));
        assert_eq!(s.u, BigInt::from(2));
        assert_eq!(s.n_lambda, 1);

        let s = stats(&part(&[1]));
        assert_eq!((s.k, s.z, s.u), (0, 1.into(), 1.into()));
        assert_eq!(s.theta, BigRational::one());

        assert_eq!(k_lambda(&part(&[2])), 2);
        assert_eq!(k_lambda(&part(&[1, 1])), -2);

        let s = stats(&part(&[1, 1]));
        assert_eq!(s.theta, BigRational::new((-1).into(), 2.into()));

        let zero = stats(&Partition::empty());
        assert_eq!((zero.u, zero.z), (1.into(), 1.into()));
        assert_eq!(zero.theta, BigRational::one());
    }

    #[test]
    fn hooks_examples() {
        assert!(hooks(&Partition::empty()).is_empty());
        assert_eq!(hooks(&part(&[1])), vec![1]);
        let mut h = hooks(&part(&[2, 1]));
        h.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(h, vec![3, 1, 1]);
        assert_eq!(hooks(&part(&[3, 1])), vec![4, 2, 1, 1]);
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(transpose(&part(&[2, 1])), part(&[2, 1]));
        assert_eq!(transpose(&part(&[3])), part(&[1, 1, 1]));
        assert_eq!(transpose(&Partition::empty()), Partition::empty());
    }

    #[test]
    fn character_examples() {
        for n in 1..=5 {
            for rho in enumerate_partitions(n) {
                assert_eq!(mn_character(&part(&[n]), &rho).unwrap(), BigInt::one());
            }
        }
        assert_eq!(mn_character(&part(&[1, 1]), &part(&[2])).unwrap(), BigInt::from(-1));
        assert_eq!(mn_character(&part(&[2, 1]), &part(&[1, 1, 1])).unwrap(), BigInt::from(2));
        assert!(matches!(
            mn_character(&part(&[2]), &part(&[1])),
            Err(Error::DegreeMismatch(2, 1))
        ));
    }

    /// Counts permutations of cycle type ρ by enumerating S_n directly.
    fn cycle_type_counts(n: usize) -> std::collections::HashMap<Vec<usize>, u64> {
        let mut counts = std::collections::HashMap::new();
        let mut perm: Vec<usize> = (0..n).collect();
        fn heap(k: usize, perm: &mut Vec<usize>, counts: &mut std::collections::HashMap<Vec<usize>, u64>) {
            if k <= 1 {
                let n = perm.len();
                let mut seen = vec![false; n];
                let mut cycles = Vec::new();
                for s in 0..n {
                    if seen[s] {
                        continue;
                    }
                    let mut len = 0;
                    let mut c = s;
                    while !seen[c] {
                        seen[c] = true;
                        c = perm[c];
                        len += 1;
                    }
                    cycles.push(len);
                }
                cycles.sort_unstable_by(|a, b| b.cmp(a));
                *counts.entry(cycles).or_insert(0) += 1;
                return;
            }
            for i in 0..k {
                heap(k - 1, perm, counts);
                if k.is_multiple_of(2) {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut perm, &mut counts);
        counts
    }

    #[test]
    fn character_orthogonality() {
        for n in 1..=5usize {
            let counts = cycle_type_counts(n);
            let n_fact: u64 = (1..=n as u64).product();
            for lambda in enumerate_partitions(n) {
                let mut total = BigInt::zero();
                for rho in enumerate_partitions(n) {
                    let chi = mn_character(&lambda, &rho).unwrap();
                    total += &chi * &chi * BigInt::from(counts[&rho.0]);
                    // class size also equals n!/z_ρ
                    assert_eq!(BigInt::from(counts[&rho.0]) * stats(&rho).z, BigInt::from(n_fact));
                }
                assert_eq!(total, BigInt::from(n_fact), "λ = {lambda}");
            }
        }
    }

    #[test]
    fn hook_sum_and_k_symmetry() {
        for d in 0..=12 {
            for lambda in enumerate_partitions(d) {
                let t = transpose(&lambda);
                assert_eq!(transpose(&t), lambda);
                let k = k_lambda(&lambda);
                assert_eq!(k, -k_lambda(&t));
                assert_eq!(k % 2, 0);
                let hook_sum: i64 = hooks(&lambda).iter().map(|&h| h as i64).sum();
                assert_eq!(hook_sum - k / 2, 2 * n_lambda(&lambda) as i64 + d as i64);
                let mut a = hooks(&lambda);
                let mut b = hooks(&t);
                a.sort_unstable();
                b.sort_unstable();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), part(&[2, 1]));
        let p: Partition = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[3,1]");
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }
}
