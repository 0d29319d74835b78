//! Brute-force enumeration of rooted planar maps from dart structures.
//!
//! Two independent schemes are provided. The fixed-involution scheme fixes
//! `alpha = (0 1)(2 3)…`, runs over rotations and roots every structure at
//! dart 0; each rooted map then appears `2^(n−1)(n−1)!` times. The
//! fixed-rotation scheme fixes one rotation per degree multiset, runs over
//! involutions and roots at every dart; each rooted map appears
//! `Π m_k!·k^(m_k)` times.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{Color, CombMap, DegreeProfile, UnionFind};
use crate::series::{Grading, Monomial, RatFunc, Series, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OracleScheme {
    #[default]
    FixedInvolution,
    FixedRotation,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, k| a * k)
}

/// Copies of each rooted map met by the fixed-involution scheme on `n` edges.
pub fn rooted_normalization(n_edges: usize) -> BigInt {
    assert!(n_edges >= 1);
    (BigInt::from(1) << (n_edges - 1)) * factorial(n_edges - 1)
}

/// Order of the centralizer of a permutation with these cycle lengths.
pub fn centralizer_order(degrees: &[usize]) -> BigInt {
    let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in degrees {
        *mult.entry(d).or_default() += 1;
    }
    mult.iter().fold(BigInt::from(1), |a, (&k, &m)| a * factorial(m) * BigInt::from(k).pow(m as u32))
}

fn count_cycles(n: usize, next: impl Fn(usize) -> usize) -> usize {
    let mut seen = vec![false; n];
    let mut c = 0;
    for s in 0..n {
        if !seen[s] {
            c += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = next(x);
            }
        }
    }
    c
}

/// Connected genus-0 test on a closed structure (no fixed points in `alpha`).
fn planar_connected(nu: &[usize], alpha: &[usize]) -> bool {
    let n = nu.len();
    if !connected(nu, alpha) {
        return false;
    }
    let v = count_cycles(n, |d| nu[d]);
    let f = count_cycles(n, |d| nu[alpha[d]]);
    v + f == n / 2 + 2
}

fn build(nu: Vec<usize>, alpha: Vec<usize>, root: usize) -> CombMap {
    let n = nu.len();
    CombMap::new(nu, alpha, &vec![Color::White; n], root).expect("checked structure")
}

/// Visits every rotation on `2n` darts whose cycle lengths are the given
/// multiset, under the fixed involution; maps are rooted at dart 0.
fn fold_fixed_involution<T: Send>(
    degrees: &[usize],
    init: &(impl Fn() -> T + Sync),
    visit: &(impl Fn(&mut T, &CombMap, &[usize]) + Sync),
    merge: &(impl Fn(T, T) -> T + Sync),
) -> T {
    let n: usize = degrees.iter().sum();
    let alpha: Vec<usize> = (0..n).map(|d| d ^ 1).collect();
    let mut lens: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in degrees {
        *lens.entry(d).or_default() += 1;
    }
    // seed: the cycle through dart 0
    let mut seeds = Vec::new();
    for &k in lens.keys() {
        let mut cyc = vec![0];
        ordered_choices(n, &mut vec![false; n], &mut cyc, k, &mut |c| seeds.push((k, c.to_vec())));
    }
    seeds
        .into_par_iter()
        .fold(init, |mut acc, (k, cyc)| {
            let mut lens = lens.clone();
            *lens.get_mut(&k).expect("present") -= 1;
            let mut nu = vec![usize::MAX; n];
            close_cycle(&mut nu, &cyc);
            fill_rotations(&mut nu, &mut lens, &mut |nu| {
                if planar_connected(nu, &alpha) {
                    let m = build(nu.to_vec(), alpha.clone(), 0);
                    visit(&mut acc, &m, &[0]);
                }
            });
            acc
        })
        .reduce(init, merge)
}

fn close_cycle(nu: &mut [usize], cyc: &[usize]) {
    for i in 0..cyc.len() {
        nu[cyc[i]] = cyc[(i + 1) % cyc.len()];
    }
}

/// Extends `cyc` with distinct darts not yet used until it has length `k`.
fn ordered_choices(n: usize, used: &mut Vec<bool>, cyc: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if cyc.len() == k {
        f(cyc);
        return;
    }
    for d in 0..n {
        if !used[d] && !cyc.contains(&d) {
            used[d] = true;
            cyc.push(d);
            ordered_choices(n, used, cyc, k, f);
            cyc.pop();
            used[d] = false;
        }
    }
}

fn fill_rotations(nu: &mut Vec<usize>, lens: &mut BTreeMap<usize, usize>, f: &mut impl FnMut(&[usize])) {
    let Some(first) = nu.iter().position(|&x| x == usize::MAX) else {
        f(nu);
        return;
    };
    let n = nu.len();
    let keys: Vec<usize> = lens.iter().filter(|(_, &m)| m > 0).map(|(&k, _)| k).collect();
    for k in keys {
        *lens.get_mut(&k).expect("present") -= 1;
        let mut used: Vec<bool> = nu.iter().map(|&x| x != usize::MAX).collect();
        used[first] = true;
        let mut cyc = vec![first];
        ordered_choices(n, &mut used, &mut cyc, k, &mut |c| {
            let mut next = nu.clone();
            close_cycle(&mut next, c);
            fill_rotations(&mut next, &mut lens.clone(), f);
        });
        *lens.get_mut(&k).expect("present") += 1;
    }
}

/// The rotation whose cycles are consecutive blocks of the given lengths.
pub fn block_rotation(degrees: &[usize]) -> Vec<usize> {
    let mut nu = Vec::new();
    let mut start = 0;
    for &d in degrees {
        for i in 0..d {
            nu.push(start + (i + 1) % d);
        }
        start += d;
    }
    nu
}

/// Visits every involution without fixed points under a fixed rotation with
/// the given cycle lengths; every dart is offered as a root.
fn fold_fixed_rotation<T: Send>(
    degrees: &[usize],
    init: &(impl Fn() -> T + Sync),
    visit: &(impl Fn(&mut T, &CombMap, &[usize]) + Sync),
    merge: &(impl Fn(T, T) -> T + Sync),
) -> T {
    let nu = block_rotation(degrees);
    let n = nu.len();
    let roots: Vec<usize> = (0..n).collect();
    (1..n)
        .into_par_iter()
        .fold(init, |mut acc, partner| {
            let mut alpha = vec![usize::MAX; n];
            alpha[0] = partner;
            alpha[partner] = 0;
            matchings(&mut alpha, &mut |alpha| {
                if planar_connected(&nu, alpha) {
                    let m = build(nu.clone(), alpha.to_vec(), 0);
                    visit(&mut acc, &m, &roots);
                }
            });
            acc
        })
        .reduce(init, merge)
}

fn matchings(alpha: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    let Some(a) = alpha.iter().position(|&x| x == usize::MAX) else {
        f(alpha);
        return;
    };
    for b in a + 1..alpha.len() {
        if alpha[b] == usize::MAX {
            alpha[a] = b;
            alpha[b] = a;
            matchings(alpha, f);
            alpha[a] = usize::MAX;
            alpha[b] = usize::MAX;
        }
    }
}

/// Folds `visit` over all rooted planar maps whose vertex degrees form the
/// given multiset. Each call receives a map and the darts to use as roots;
/// the returned factor converts the accumulated total to rooted-map units.
pub fn fold_rooted_maps<T: Send>(
    scheme: OracleScheme,
    degrees: &[usize],
    init: impl Fn() -> T + Sync,
    visit: impl Fn(&mut T, &CombMap, &[usize]) + Sync,
    merge: impl Fn(T, T) -> T + Sync,
) -> (T, BigRational) {
    let darts: usize = degrees.iter().sum();
    assert!(darts % 2 == 0 && darts > 0 && degrees.iter().all(|&d| d > 0));
    match scheme {
        OracleScheme::FixedInvolution => {
            let t = fold_fixed_involution(degrees, &init, &visit, &merge);
            (t, BigRational::new(1.into(), rooted_normalization(darts / 2)))
        }
        OracleScheme::FixedRotation => {
            let t = fold_fixed_rotation(degrees, &init, &visit, &merge);
            (t, BigRational::new(1.into(), centralizer_order(degrees)))
        }
    }
}

/// Partitions of `n` with parts in `allowed` (descending).
pub fn partitions_with(n: usize, allowed: &[usize]) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, allowed: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for &k in allowed.iter().filter(|&&k| k <= max.min(n)) {
            cur.push(k);
            go(n - k, k, allowed, cur, out);
            cur.pop();
        }
    }
    let mut allowed = allowed.to_vec();
    allowed.sort_unstable_by(|a, b| b.cmp(a));
    allowed.dedup();
    let mut out = Vec::new();
    go(n, n, &allowed, &mut Vec::new(), &mut out);
    out
}

/// Number of rooted planar maps with `n` edges.
pub fn rooted_map_count(n_edges: usize, scheme: OracleScheme) -> BigInt {
    if n_edges == 0 {
        return 1.into();
    }
    let all: Vec<usize> = (1..=2 * n_edges).collect();
    let mut total = BigRational::from_integer(0.into());
    for degrees in partitions_with(2 * n_edges, &all) {
        let (c, f) = fold_rooted_maps(scheme, &degrees, || 0u64, |a, _, r| *a += r.len() as u64, |a, b| a + b);
        total += f * BigInt::from(c);
    }
    assert!(total.is_integer());
    total.to_integer()
}

/// Proper 2-coloring of a map, white at the vertex of `d`; `None` if not bipartite.
pub fn bipartition(m: &CombMap, d: usize) -> Option<Vec<Color>> {
    let nv = m.num_vertices();
    let mut col: Vec<Option<Color>> = vec![None; nv];
    col[m.vertex_of(d)] = Some(Color::White);
    let mut stack = vec![m.vertex_of(d)];
    while let Some(v) = stack.pop() {
        let c = col[v].expect("colored");
        for x in m.vertex_darts(v) {
            let y = m.alpha(x);
            if y == x {
                continue;
            }
            let w = m.vertex_of(y);
            match col[w] {
                None => {
                    col[w] = Some(c.other());
                    stack.push(w);
                }
                Some(cw) if cw == c => return None,
                _ => {}
            }
        }
    }
    Some(col.into_iter().map(|c| c.expect("connected")).collect())
}

type Acc = BTreeMap<Monomial, BigRational>;

fn merge_acc(mut a: Acc, b: Acc) -> Acc {
    for (k, v) in b {
        *a.entry(k).or_insert_with(|| BigRational::from_integer(0.into())) += v;
    }
    a
}

fn add_acc(acc: &mut Acc, m: Monomial, c: BigRational) {
    *acc.entry(m).or_insert_with(|| BigRational::from_integer(0.into())) += c;
}

fn acc_to_series(acc: Acc, factor: &BigRational, out: &mut Series) {
    for (m, c) in acc {
        out.add_term(m, RatFunc::from_rational(c * factor));
    }
}

fn vertex_monomial(m: &CombMap, colors: &[Color], white: fn(usize) -> VarId, black: fn(usize) -> VarId) -> Monomial {
    let mut pairs: BTreeMap<VarId, i32> = BTreeMap::new();
    for v in 0..m.num_vertices() {
        let k = m.degree(v);
        let var = match colors[v] {
            Color::White => white(k),
            Color::Black => black(k),
        };
        *pairs.entry(var).or_default() += 1;
    }
    Monomial::from_pairs(pairs)
}

/// Bipartite maps with `n ≤ n_max` edges rooted at a black vertex of degree
/// 2, by degree distribution in `x_k`, `y_k`, through the dart oracle.
pub fn bipartite_map_sum(n_max: usize, scheme: OracleScheme, g: &Grading) -> Series {
    let mut out = Series::zero(g);
    for n in 1..=n_max {
        let all: Vec<usize> = (1..=2 * n).collect();
        for degrees in partitions_with(2 * n, &all) {
            if !degrees.contains(&2) {
                continue;
            }
            let (acc, f) = fold_rooted_maps(
                scheme,
                &degrees,
                Acc::new,
                |acc, m, roots| {
                    for &r in roots {
                        if m.degree(m.vertex_of(r)) != 2 {
                            continue;
                        }
                        // the root vertex is black, so its neighbours are white
                        let Some(colors) = bipartition(m, m.alpha(r)) else {
                            return;
                        };
                        add_acc(acc, vertex_monomial(m, &colors, VarId::x, VarId::y), BigRational::from_integer(1.into()));
                    }
                },
                merge_acc,
            );
            acc_to_series(acc, &f, &mut out);
        }
    }
    out
}

/// Degree classes used by the model oracles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapClass {
    /// All vertices of degree `m`; the size counts vertices.
    Regular(usize),
    /// Degree `m` except a root vertex of degree 2; the size counts the
    /// vertices of degree `m`.
    QuasiRegular(usize),
    /// Vertex degrees from a finite set; the size counts vertices.
    Degrees(Vec<usize>),
}

impl MapClass {
    /// Degree multisets of the class, with size at most `max_size`.
    pub fn degree_sets(&self, max_size: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        match self {
            MapClass::Regular(m) => {
                for k in 1..=max_size {
                    out.push(vec![*m; k]);
                }
            }
            MapClass::QuasiRegular(m) => {
                for k in 0..=max_size {
                    let mut d = vec![*m; k];
                    d.push(2);
                    out.push(d);
                }
            }
            MapClass::Degrees(ds) => {
                let mut ds = ds.clone();
                ds.sort_unstable();
                ds.dedup();
                fn go(ds: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                    if !cur.is_empty() {
                        out.push(cur.clone());
                    }
                    if left == 0 {
                        return;
                    }
                    for (i, &d) in ds.iter().enumerate() {
                        cur.push(d);
                        go(&ds[i..], left - 1, cur, out);
                        cur.pop();
                    }
                }
                go(&ds, max_size, &mut Vec::new(), &mut out);
            }
        }
        out.retain(|d| d.iter().sum::<usize>() % 2 == 0);
        out
    }
}

/// Where an Ising configuration may be rooted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsingRoot {
    pub color: Color,
    pub degree: Option<usize>,
}

fn colorings(nv: usize) -> impl Iterator<Item = Vec<Color>> {
    (0u64..1 << nv).map(move |mask| {
        (0..nv).map(|v| if mask >> v & 1 == 1 { Color::Black } else { Color::White }).collect()
    })
}

fn edges_of(m: &CombMap) -> Vec<(usize, usize)> {
    (0..m.num_darts())
        .filter(|&d| m.alpha(d) > d)
        .map(|d| (m.vertex_of(d), m.vertex_of(m.alpha(d))))
        .collect()
}

/// Ising sum over rooted maps of a class: each vertex coloring weighs
/// `X_k` / `Y_k` per white / black vertex of degree `k` and `u` per
/// frustrated edge.
pub fn ising_sum(class: &MapClass, root: IsingRoot, max_size: usize, scheme: OracleScheme, g: &Grading) -> Series {
    let mut out = Series::zero(g);
    for degrees in class.degree_sets(max_size) {
        let (acc, f) = fold_rooted_maps(
            scheme,
            &degrees,
            BTreeMap::<(Monomial, usize), BigRational>::new,
            |acc, m, roots| {
                let roots: Vec<usize> = roots
                    .iter()
                    .copied()
                    .filter(|&r| root.degree.is_none_or(|k| m.degree(m.vertex_of(r)) == k))
                    .collect();
                if roots.is_empty() {
                    return;
                }
                let edges = edges_of(m);
                for colors in colorings(m.num_vertices()) {
                    let hits = roots.iter().filter(|&&r| colors[m.vertex_of(r)] == root.color).count();
                    if hits == 0 {
                        continue;
                    }
                    let frustrated = edges.iter().filter(|&&(a, b)| colors[a] != colors[b]).count();
                    let key = (vertex_monomial(m, &colors, VarId::big_x, VarId::big_y), frustrated);
                    *acc.entry(key).or_insert_with(|| BigRational::from_integer(0.into())) += BigRational::from_integer(hits.into());
                }
            },
            |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert_with(|| BigRational::from_integer(0.into())) += v;
                }
                a
            },
        );
        for ((mono, fr), c) in acc {
            out.add_term(mono, RatFunc::from_rational(c * &f).mul(&RatFunc::u().pow(fr as u32)));
        }
    }
    out
}

/// Hard-particle sum over maps of a class rooted at an edge whose ends are
/// vacant: vacant vertices weigh `X_k`, occupied ones `Y_k`, and no edge
/// (loops included) has both ends occupied.
pub fn hard_particle_sum(class: &MapClass, max_size: usize, scheme: OracleScheme, g: &Grading) -> Series {
    let mut out = Series::zero(g);
    for degrees in class.degree_sets(max_size) {
        let (acc, f) = fold_rooted_maps(
            scheme,
            &degrees,
            Acc::new,
            |acc, m, roots| {
                let edges = edges_of(m);
                for colors in colorings(m.num_vertices()) {
                    if edges.iter().any(|&(a, b)| colors[a] == Color::Black && colors[b] == Color::Black) {
                        continue;
                    }
                    let hits = roots
                        .iter()
                        .filter(|&&r| {
                            colors[m.vertex_of(r)] == Color::White && colors[m.vertex_of(m.alpha(r))] == Color::White
                        })
                        .count();
                    if hits > 0 {
                        add_acc(acc, vertex_monomial(m, &colors, VarId::big_x, VarId::big_y), BigRational::from_integer(hits.into()));
                    }
                }
            },
            merge_acc,
        );
        acc_to_series(acc, &f, &mut out);
    }
    out
}

/// All `k`-leg bipartite maps with at most `max_edges` edges whose degree
/// profile passes `keep`, rooted at a leg, one per rooted isomorphism class.
///
/// Legs hang from white vertices and all lie in the root face.
pub fn enumerate_leg_maps(k: usize, max_edges: usize, keep: impl Fn(&DegreeProfile) -> bool + Sync) -> Vec<CombMap> {
    let mut jobs = Vec::new();
    for e in 0..=max_edges {
        let all_w: Vec<usize> = (1..=e + k).collect();
        let all_b: Vec<usize> = (1..=e.max(1)).collect();
        for white in partitions_with(e + k, &all_w) {
            let blacks = if e == 0 { vec![vec![]] } else { partitions_with(e, &all_b) };
            for black in blacks {
                let p = DegreeProfile::new(white.clone(), black);
                if keep(&p) {
                    jobs.push(p);
                }
            }
        }
    }
    let found: Vec<Vec<(Vec<u32>, CombMap)>> = jobs.par_iter().map(|p| leg_maps_of_profile(k, p)).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (code, m) in found.into_iter().flatten() {
        if seen.insert(code) {
            out.push(m);
        }
    }
    out
}

/// Start and degree of each vertex block of `block_rotation`.
fn blocks(degrees: &[usize]) -> Vec<(usize, usize)> {
    let mut start = 0;
    degrees
        .iter()
        .map(|&d| {
            start += d;
            (start - d, d)
        })
        .collect()
}

/// Assigns black partners to `whites[i..]`, one matching per orbit under
/// rotating black vertices and permuting black vertices of equal degree: a
/// black vertex is entered at its first dart, and vertices of one degree
/// are entered in order.
fn black_matchings(
    whites: &[usize],
    i: usize,
    black: &[(usize, usize)],
    entered: &mut Vec<bool>,
    alpha: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    let Some(&w) = whites.get(i) else {
        f(alpha);
        return;
    };
    for (j, &(start, d)) in black.iter().enumerate() {
        if entered[j] {
            for b in start..start + d {
                if alpha[b] == usize::MAX {
                    alpha[w] = b;
                    alpha[b] = w;
                    black_matchings(whites, i + 1, black, entered, alpha, f);
                    alpha[b] = usize::MAX;
                }
            }
        } else if j == 0 || black[j - 1].1 != d || entered[j - 1] {
            entered[j] = true;
            alpha[w] = start;
            alpha[start] = w;
            black_matchings(whites, i + 1, black, entered, alpha, f);
            alpha[start] = usize::MAX;
            entered[j] = false;
        }
    }
    alpha[w] = usize::MAX;
}

fn leg_maps_of_profile(k: usize, p: &DegreeProfile) -> Vec<(Vec<u32>, CombMap)> {
    let degrees: Vec<usize> = p.white.iter().chain(&p.black).copied().collect();
    let nu = block_rotation(&degrees);
    let nw: usize = p.white.iter().sum();
    let n = nu.len();
    let mut colors = vec![Color::White; n];
    for c in colors.iter_mut().skip(nw) {
        *c = Color::Black;
    }
    let all = blocks(&degrees);
    let (white, black) = all.split_at(p.white.len());
    // first dart of the first white vertex of each degree
    let firsts: Vec<usize> =
        white.iter().enumerate().filter(|&(j, b)| j == 0 || white[j - 1].1 != b.1).map(|(_, b)| b.0).collect();
    let edges = (n - k) / 2;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut legs = Vec::new();
    subsets(nw, k, 0, &mut legs, &mut |legs| {
        // rotating and permuting white vertices moves some leg to one of these
        if !legs.iter().any(|l| firsts.contains(l)) {
            return;
        }
        let whites: Vec<usize> = (0..nw).filter(|d| !legs.contains(d)).collect();
        let mut alpha = vec![usize::MAX; n];
        for &l in legs {
            alpha[l] = l;
        }
        let mut entered = vec![false; black.len()];
        black_matchings(&whites, 0, black, &mut entered, &mut alpha, &mut |alpha| {
            if !connected(&nu, alpha) {
                return;
            }
            let v = count_cycles(n, |d| nu[d]);
            let f = count_cycles(n, |d| nu[alpha[d]]);
            if v + f != edges + 2 {
                return;
            }
            let mut face = vec![false; n];
            let mut d = legs[0];
            while !face[d] {
                face[d] = true;
                d = nu[alpha[d]];
            }
            if !legs.iter().all(|&l| face[l]) {
                return;
            }
            let m = CombMap::new(nu.clone(), alpha.to_vec(), &colors, legs[0]).expect("checked structure");
            for &l in legs {
                let r = m.with_root(l);
                let code = r.canonical_code();
                if seen.insert(code.clone()) {
                    out.push((code, r.canonical_form()));
                }
            }
        });
    });
    out
}

fn connected(nu: &[usize], alpha: &[usize]) -> bool {
    let n = nu.len();
    let mut uf = UnionFind::new(n);
    let mut comps = n;
    for d in 0..n {
        for e in [nu[d], alpha[d]] {
            if uf.union(d, e) {
                comps -= 1;
            }
        }
    }
    comps == 1
}

fn subsets(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in from..n {
        cur.push(i);
        subsets(n, k, i + 1, cur, f);
        cur.pop();
    }
}
