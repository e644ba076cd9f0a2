//! Combinatorics of monomial ideals: standard-monomial counts and dimension.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::Monomial;

/// Vector-space dimension of a quotient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dimension {
    Finite(u64),
    Infinite,
}

impl Dimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            Dimension::Finite(d) => Some(d),
            Dimension::Infinite => None,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(d) => write!(f, "{d}"),
            Dimension::Infinite => write!(f, "infinite"),
        }
    }
}

/// Krull dimension; the unit ideal cuts out the empty set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum KrullDim {
    Empty,
    Dim(usize),
}

impl fmt::Display for KrullDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KrullDim::Empty => write!(f, "empty"),
            KrullDim::Dim(d) => write!(f, "{d}"),
        }
    }
}

/// Removes monomials divisible by another one in the list.
pub fn minimalize(mut leads: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    leads.sort();
    leads.dedup();
    let divides = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut out: Vec<Vec<u32>> = Vec::new();
    // sort by degree so divisors come first
    leads.sort_by_key(|m| m.iter().map(|&e| e as u64).sum::<u64>());
    for m in leads {
        if !out.iter().any(|d| divides(d, &m)) {
            out.push(m);
        }
    }
    out
}

/// Number of monomials in `nvars` variables outside the monomial ideal
/// generated by `leads`.
pub fn count_standard_monomials(leads: &[Monomial], nvars: usize) -> Dimension {
    let raw: Vec<Vec<u32>> = leads.iter().map(|m| m.exponents().to_vec()).collect();
    let leads = minimalize(raw);
    let pure_power = |i: usize| {
        leads
            .iter()
            .filter(|m| m.iter().enumerate().all(|(j, &e)| j == i || e == 0) && m[i] > 0)
            .map(|m| m[i])
            .min()
    };
    if leads.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return Dimension::Finite(0);
    }
    if (0..nvars).any(|i| pure_power(i).is_none()) {
        return Dimension::Infinite;
    }
    Dimension::Finite(count_rec(&leads))
}

fn count_rec(leads: &[Vec<u32>]) -> u64 {
    if leads.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return 0;
    }
    let nvars = match leads.first() {
        Some(m) => m.len(),
        None => unreachable!("finite staircase has a pure power in every variable"),
    };
    if nvars == 1 {
        return leads.iter().map(|m| m[0]).min().unwrap() as u64;
    }
    let bound = leads
        .iter()
        .filter(|m| m[1..].iter().all(|&e| e == 0))
        .map(|m| m[0])
        .min()
        .expect("pure power present");
    (0..bound)
        .map(|e| {
            let sub: Vec<Vec<u32>> = leads.iter().filter(|m| m[0] <= e).map(|m| m[1..].to_vec()).collect();
            count_rec(&minimalize(sub))
        })
        .sum()
}

/// Number of monomials of degree `< n` outside the monomial ideal generated
/// by `leads`, i.e. the standard monomials of `in(I) + m^n`.
pub fn count_standard_monomials_below(leads: &[Monomial], nvars: usize, n: u64) -> u64 {
    let leads = minimalize(leads.iter().map(|m| m.exponents().to_vec()).collect());
    let mut exps = vec![0u32; nvars];
    count_below(&leads, &mut exps, 0, n)
}

fn count_below(leads: &[Vec<u32>], exps: &mut [u32], var: usize, budget: u64) -> u64 {
    if leads.iter().any(|m| m.iter().zip(exps.iter()).all(|(a, b)| a <= b)) {
        return 0;
    }
    if var == exps.len() {
        return 1;
    }
    let mut total = 0;
    for e in 0..budget {
        exps[var] = e as u32;
        let c = count_below(leads, exps, var + 1, budget - e);
        if c == 0 && var + 1 == exps.len() {
            break;
        }
        total += c;
    }
    exps[var] = 0;
    total
}

/// Dimension of `k[x]/in(I)`: the largest set of variables containing the
/// support of no leading monomial.
pub fn krull_dimension(leads: &[Monomial], nvars: usize) -> KrullDim {
    if leads.iter().any(Monomial::is_one) {
        return KrullDim::Empty;
    }
    let masks: Vec<u64> = leads.iter().map(Monomial::support_mask).collect();
    assert!(nvars <= 24, "krull dimension by subset enumeration supports at most 24 variables");
    let mut best = 0;
    for set in 0u64..(1u64 << nvars) {
        let size = set.count_ones() as usize;
        if size > best && masks.iter().all(|m| m & !set != 0) {
            best = size;
        }
    }
    KrullDim::Dim(best)
}
