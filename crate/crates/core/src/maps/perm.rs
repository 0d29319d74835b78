//! Bipartite maps with labelled edges as pairs of permutations.
//!
//! Edge `i` has a white dart `2i` and a black dart `2i + 1`; `sigma` turns
//! around white vertices, `rho` around black ones, and faces are the cycles
//! of `sigma ∘ rho`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{Color, CombMap, DegreeProfile, UnionFind};
use crate::error::{Error, Result};
use crate::series::{Grading, Monomial, RatFunc, Series, VarId};

/// A permutation of `0..n` in one-line notation.
pub type Perm = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermPair {
    pub n: usize,
    pub sigma: Perm,
    pub rho: Perm,
}

/// Cycle lengths, sorted descending.
pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn cycle_count(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut c = 0;
    for s in 0..p.len() {
        if !seen[s] {
            c += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
            }
        }
    }
    c
}

impl PermPair {
    pub fn new(sigma: Perm, rho: Perm) -> Result<PermPair> {
        let n = sigma.len();
        if rho.len() != n || n == 0 {
            return Err(Error::InvalidMap("permutations of different sizes".into()));
        }
        for p in [&sigma, &rho] {
            let mut seen = vec![false; n];
            for &x in p.iter() {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidMap("not a permutation".into()));
                }
            }
        }
        Ok(PermPair { n, sigma, rho })
    }

    /// `sigma ∘ rho`: apply `rho` first.
    pub fn product(&self) -> Perm {
        (0..self.n).map(|i| self.sigma[self.rho[i]]).collect()
    }

    pub fn is_transitive(&self) -> bool {
        let mut uf = UnionFind::new(self.n);
        let mut comps = self.n;
        for i in 0..self.n {
            for j in [self.sigma[i], self.rho[i]] {
                if uf.union(i, j) {
                    comps -= 1;
                }
            }
        }
        comps == 1
    }

    /// Total number of cycles of `sigma`, `rho` and their product.
    pub fn cycle_total(&self) -> usize {
        cycle_count(&self.sigma) + cycle_count(&self.rho) + cycle_count(&self.product())
    }

    pub fn is_planar(&self) -> bool {
        self.cycle_total() == self.n + 2
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::new(cycle_type(&self.sigma), cycle_type(&self.rho))
    }
}

/// Encodes a leg-free bipartite map; edges are numbered by their white dart.
pub fn to_perm_pair(m: &CombMap) -> Result<PermPair> {
    if m.half_edges().next().is_some() {
        return Err(Error::InvalidMap("map has legs".into()));
    }
    if !m.is_bipartite() {
        return Err(Error::InvalidMap("map is not bipartite".into()));
    }
    let whites: Vec<usize> = (0..m.num_darts()).filter(|&d| m.color(d) == Color::White).collect();
    let mut edge = vec![0; m.num_darts()];
    for (i, &d) in whites.iter().enumerate() {
        edge[d] = i;
        edge[m.alpha(d)] = i;
    }
    let sigma = whites.iter().map(|&d| edge[m.nu(d)]).collect();
    let rho = whites.iter().map(|&d| edge[m.nu(m.alpha(d))]).collect();
    PermPair::new(sigma, rho)
}

/// The map of a pair, rooted at the white dart of edge 0.
pub fn from_perm_pair(p: &PermPair) -> Result<CombMap> {
    let n = p.n;
    let mut nu = vec![0; 2 * n];
    let mut alpha = vec![0; 2 * n];
    let mut colors = vec![Color::White; 2 * n];
    for i in 0..n {
        nu[2 * i] = 2 * p.sigma[i];
        nu[2 * i + 1] = 2 * p.rho[i] + 1;
        alpha[2 * i] = 2 * i + 1;
        alpha[2 * i + 1] = 2 * i;
        colors[2 * i + 1] = Color::Black;
    }
    CombMap::new(nu, alpha, &colors, 0)
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut p: Perm = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Number `m(λ, μ)` of transitive planar pairs of `S_n` per cycle types.
pub fn enumerate_perm_pairs(n: usize) -> BTreeMap<DegreeProfile, u64> {
    let perms = all_perms(n);
    let types: Vec<Vec<usize>> = perms.iter().map(|p| cycle_type(p)).collect();
    let counts: Vec<usize> = types.iter().map(|t| t.len()).collect();
    (0..perms.len())
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<DegreeProfile, u64>, i| {
            for j in 0..perms.len() {
                // c(σρ) is then forced to be n + 2 − c(σ) − c(ρ) ≥ 1
                if counts[i] + counts[j] > n + 1 {
                    continue;
                }
                let pair = PermPair { n, sigma: perms[i].clone(), rho: perms[j].clone() };
                if pair.is_planar() && pair.is_transitive() {
                    *acc.entry(DegreeProfile { white: types[i].clone(), black: types[j].clone() }).or_default() += 1;
                }
            }
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        })
}

/// Monomial `x^λ y^μ`.
pub fn profile_monomial(p: &DegreeProfile) -> Monomial {
    let mut pairs: BTreeMap<VarId, i32> = BTreeMap::new();
    for &k in &p.white {
        *pairs.entry(VarId::x(k)).or_default() += 1;
    }
    for &k in &p.black {
        *pairs.entry(VarId::y(k)).or_default() += 1;
    }
    Monomial::from_pairs(pairs)
}

/// `Σ m(λ,μ)·2m₂·x^λ y^μ / n!` over `1 ≤ n ≤ n_max`: bipartite maps rooted at
/// a black vertex of degree 2.
pub fn perm_pair_map_series(n_max: usize, g: &Grading) -> Series {
    let mut s = Series::zero(g);
    let mut fact = BigInt::from(1);
    for n in 1..=n_max {
        fact *= n;
        for (p, count) in enumerate_perm_pairs(n) {
            let m2 = p.black.iter().filter(|&&k| k == 2).count();
            let c = BigRational::new(BigInt::from(count) * 2 * m2, fact.clone());
            s.add_term(profile_monomial(&p), RatFunc::from_rational(c));
        }
    }
    s
}
