//! Named verification suites: each runs a family of exact identities at a
//! given size and reports the first witness of any failure.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;

use crate::error::Result;
use crate::gf::{
    bipartite_map_gf, hard_from_ising_limit, hard_particle_gf, hard_tetravalent_closed, hard_trivalent_closed,
    ising_gf_deg2root, ising_quasi_cubic_closed, ising_quasi_tetravalent_closed, ising_regular,
    ising_tetravalent_closed, residual_check, Tree23, Tree24, WeightSystem,
};
use crate::maps::{
    bipartite_map_sum, closure, enumerate_leg_maps, hard_particle_sum, ising_sum, opening, perm_pair_map_series,
    rooted_map_count, Color, DegreeProfile, IsingRoot, MapClass, OracleScheme,
};
use crate::series::{Grading, RatFunc, Series, VarId};
use crate::trees::{
    generate_blossom_trees, rho, rho_inverse, w0_bijection, w0_inverse, DegreeSupport, PlaneTree, RhoImage, RootKind,
    SigmaConvention, W0Image,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    OracleMaps,
    OracleHard,
    OracleIsing,
    BijectionClosure,
    BijectionRho,
    ClosedForms,
    Normalization,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::OracleMaps,
        Suite::OracleHard,
        Suite::OracleIsing,
        Suite::BijectionClosure,
        Suite::BijectionRho,
        Suite::ClosedForms,
        Suite::Normalization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OracleMaps => "oracle-maps",
            Suite::OracleHard => "oracle-hard",
            Suite::OracleIsing => "oracle-ising",
            Suite::BijectionClosure => "bijection-closure",
            Suite::BijectionRho => "bijection-rho",
            Suite::ClosedForms => "closed-forms",
            Suite::Normalization => "normalization",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// What `size` counts for this suite.
    pub fn size_unit(self) -> &'static str {
        match self {
            Suite::OracleMaps | Suite::BijectionClosure | Suite::BijectionRho | Suite::Normalization => "edges",
            Suite::OracleHard | Suite::OracleIsing => "vertices",
            Suite::ClosedForms => "order",
        }
    }

    pub fn default_size(self) -> usize {
        match self {
            Suite::OracleMaps => 5,
            Suite::OracleHard | Suite::OracleIsing => 3,
            Suite::BijectionClosure => 5,
            Suite::BijectionRho => 6,
            Suite::ClosedForms => 4,
            Suite::Normalization => 5,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    /// `None` when the identity holds.
    pub witness: Option<String>,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, witness: Option<String>) -> Self {
        CheckOutcome { name: name.into(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub size: usize,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }
}

pub fn run_suite(suite: Suite, size: usize) -> SuiteReport {
    let checks = match suite {
        Suite::OracleMaps => oracle_maps(size),
        Suite::OracleHard => oracle_hard(size),
        Suite::OracleIsing => oracle_ising(size),
        Suite::BijectionClosure => bijection_closure(size),
        Suite::BijectionRho => bijection_rho(size),
        Suite::ClosedForms => closed_forms(size),
        Suite::Normalization => normalization(size),
    };
    SuiteReport { suite, size, checks }
}

/// First differing monomial of two series, or the error of either side.
pub fn series_witness(got: Result<Series>, want: Result<Series>) -> Option<String> {
    match (got, want) {
        (Ok(a), Ok(b)) => a.first_difference(&b).map(|(m, x, y)| format!("{m}: got {x}, expected {y}")),
        (Err(e), _) => Some(format!("error: {e}")),
        (_, Err(e)) => Some(format!("reference error: {e}")),
    }
}

fn compare(name: impl Into<String>, got: Result<Series>, want: Result<Series>) -> CheckOutcome {
    CheckOutcome::new(name, series_witness(got, want))
}

/// Both colors weigh their degree, so grade `2n` means `n` edges.
pub fn edge_grading(edges: usize) -> Grading {
    Grading::new(2 * edges as u32, (1..=edges + 1).flat_map(|k| [(VarId::x(k), k as u32), (VarId::y(k), k as u32)]))
}

/// `X_k`, `Y_k` of weight 1 for the given degrees: the grade counts vertices.
pub fn vertex_grading(order: u32, degrees: &[usize]) -> Grading {
    Grading::new(order, degrees.iter().flat_map(|&k| [(VarId::big_x(k), 1), (VarId::big_y(k), 1)]))
}

const SCHEME: OracleScheme = OracleScheme::FixedRotation;

fn oracle_maps(n: usize) -> Vec<CheckOutcome> {
    let g = edge_grading(n);
    let ks: Vec<usize> = (1..=n + 1).collect();
    let gf = WeightSystem::indeterminate(&g, &ks, &ks).and_then(|ws| bipartite_map_gf(&ws));
    let perm = perm_pair_map_series(n, &g);
    let mut out = vec![compare(format!("tree series = permutation pairs, {n} edges"), gf.clone(), Ok(perm.clone()))];
    let small = n.min(5);
    let gs = edge_grading(small);
    for scheme in [OracleScheme::FixedInvolution, OracleScheme::FixedRotation] {
        out.push(compare(
            format!("{scheme:?} darts = permutation pairs, {small} edges"),
            Ok(bipartite_map_sum(small, scheme, &gs)),
            Ok(perm.truncate(2 * small as u32).regrade(&gs)),
        ));
    }
    out
}

fn oracle_hard(n: usize) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for m in [4usize, 3] {
        let g = vertex_grading(n as u32, &[m]);
        let oracle = hard_particle_sum(&MapClass::Regular(m), n, SCHEME, &g);
        out.push(compare(format!("hard particles, {m}-regular, tree route"), hard_particle_gf(&[m], &[m], &g), Ok(oracle.clone())));
        let closed = if m == 4 { hard_tetravalent_closed(&g) } else { hard_trivalent_closed(&g) };
        out.push(compare(format!("hard particles, {m}-regular, closed form"), closed, Ok(oracle)));
    }
    out
}

fn with_root_marker(g: &Grading, s: Result<Series>) -> Result<Series> {
    s.map(|s| Series::var(g, VarId::big_y(2)) * s)
}

fn oracle_ising(n: usize) -> Vec<CheckOutcome> {
    let deg2 = IsingRoot { color: Color::Black, degree: Some(2) };
    let white = IsingRoot { color: Color::White, degree: None };
    let mut out = Vec::new();
    for m in [4usize, 3] {
        let g = vertex_grading(n as u32, &[m]);
        let quasi = ising_sum(&MapClass::QuasiRegular(m), deg2, n, SCHEME, &g);
        out.push(compare(format!("Ising, quasi-{m}-regular, tree route"), ising_gf_deg2root(&[m], &[m], &g), Ok(quasi.clone())));
        let closed = if m == 4 { ising_quasi_tetravalent_closed(&g) } else { ising_quasi_cubic_closed(&g) };
        out.push(compare(format!("Ising, quasi-{m}-regular, closed form"), with_root_marker(&g, closed), Ok(quasi)));
        let regular = ising_sum(&MapClass::Regular(m), white, n, SCHEME, &g);
        out.push(compare(format!("Ising, {m}-regular, integral route"), ising_regular(m, &g), Ok(regular.clone())));
        if m == 4 {
            out.push(compare("Ising, 4-regular, closed form", ising_tetravalent_closed(&g), Ok(regular)));
        }
    }
    out
}

fn bijection_closure(e: usize) -> Vec<CheckOutcome> {
    let mut out = closure_checks(1, e, |_| true);
    for m in [3, 4] {
        out.extend(closure_checks(m, e, move |d| d % m == 0));
    }
    out
}

/// Closure and opening between `k`-leg maps with at most `e` edges and
/// balanced trees of charge `k − 1`, all vertex degrees passing `keep`.
pub fn closure_checks(k: usize, e: usize, keep: impl Fn(usize) -> bool + Sync + Copy) -> Vec<CheckOutcome> {
    let maps = enumerate_leg_maps(k, e, |p| p.white.iter().chain(&p.black).all(|&d| keep(d)));
    let support = DegreeSupport::edge_graded((1..=e + k).filter(|&d| keep(d)), (1..=e.max(1)).filter(|&d| keep(d)));
    let trees: Vec<_> = generate_blossom_trees(&support, (2 * e + k) as u32, RootKind::Leaf, Some(k as i32 - 1))
        .into_iter()
        .filter(|t| t.is_balanced().unwrap_or(false))
        .collect();
    let mut out = vec![CheckOutcome::new(
        format!("balanced trees and {k}-leg maps equinumerous, {e} edges"),
        (trees.len() != maps.len()).then(|| format!("{} trees, {} maps", trees.len(), maps.len())),
    )];
    let want: HashSet<Vec<u32>> = maps.iter().map(|m| m.canonical_code()).collect();
    let mut got = HashSet::new();
    let mut witness = None;
    for t in &trees {
        let step = closure(t).and_then(|m| {
            let back = opening(&m)?;
            Ok((m, back))
        });
        match step {
            Ok((m, back)) => {
                if back.canonical_code() != t.canonical_code() || m.degree_profile() != t.degree_profile() {
                    witness.get_or_insert_with(|| format!("tree {t} closes to {m}, which opens to {back}"));
                }
                if !want.contains(&m.canonical_code()) || !got.insert(m.canonical_code()) {
                    witness.get_or_insert_with(|| format!("closure of {t} is {m}: not a new enumerated map"));
                }
            }
            Err(e) => {
                witness.get_or_insert_with(|| format!("tree {t}: {e}"));
            }
        }
    }
    out.push(CheckOutcome::new(format!("opening inverts closure on {k}-leg balanced trees"), witness));
    let mut witness = None;
    for m in &maps {
        match opening(m).and_then(|t| Ok((closure(&t)?, t))) {
            Ok((back, t))
                if back.canonical_code() == m.canonical_code()
                    && t.is_blossom()
                    && t.is_balanced().unwrap_or(false)
                    && t.degree_profile() == m.degree_profile() => {}
            Ok((back, t)) => {
                witness.get_or_insert_with(|| format!("map {m} opens to {t}, which closes to {back}"));
            }
            Err(e) => {
                witness.get_or_insert_with(|| format!("map {m}: {e}"));
            }
        }
    }
    out.push(CheckOutcome::new(format!("closure inverts opening on {k}-leg maps"), witness));
    out
}

fn bijection_rho(e: usize) -> Vec<CheckOutcome> {
    let support = DegreeSupport::edge_graded(1..=4, 1..=4);
    let g = 2 * e as u32;
    let w1 = generate_blossom_trees(&support, g, RootKind::Leaf, Some(1));
    let b3 = generate_blossom_trees(&support, g, RootKind::Bud, Some(3));
    let b2 = generate_blossom_trees(&support, g, RootKind::Bud, Some(2));
    let mut out = Vec::new();
    for conv in [SigmaConvention::Contour, SigmaConvention::ReverseContour] {
        let mut witness = None;
        let mut images = HashSet::new();
        let mut balance: BTreeMap<DegreeProfile, i64> = BTreeMap::new();
        for t in &w1 {
            *balance.entry(t.degree_profile()).or_default() += 1;
            if t.is_balanced().unwrap_or(false) {
                *balance.entry(t.degree_profile()).or_default() -= 1;
                continue;
            }
            let img = match rho(t, conv) {
                Ok(img) => img,
                Err(err) => {
                    witness.get_or_insert_with(|| format!("rho({t}): {err}"));
                    continue;
                }
            };
            let (profile, key) = match &img {
                RhoImage::Single(x) => (x.degree_profile(), vec![x.canonical_code()]),
                RhoImage::Pair(a, b) => (a.degree_profile().merge(&b.degree_profile()), vec![a.canonical_code(), b.canonical_code()]),
            };
            let back = rho_inverse(&img, conv).map(|b| b.canonical_code());
            if profile != t.degree_profile() || back.as_ref().ok() != Some(&t.canonical_code()) || !images.insert(key) {
                witness.get_or_insert_with(|| format!("rho is not invertible at {t}"));
            }
        }
        for t in &b3 {
            *balance.entry(t.degree_profile()).or_default() -= 1;
        }
        for a in &b2 {
            for b in &b2 {
                if support.grade(a).unwrap_or(u32::MAX).saturating_add(support.grade(b).unwrap_or(u32::MAX)) <= g {
                    *balance.entry(a.degree_profile().merge(&b.degree_profile())).or_default() -= 1;
                }
            }
        }
        if let Some((p, c)) = balance.iter().find(|(_, &c)| c != 0) {
            witness.get_or_insert_with(|| format!("profile {p}: W1 - W1* - B3 - B2^2 = {c}"));
        }
        out.push(CheckOutcome::new(format!("rho bijection, {conv:?} matching, grade {g}"), witness));
    }
    out.push(w0_check(&support, g, &b2));
    out
}

/// Rerooting sends the unbalanced trees of charge 0 bijectively onto `B_2`.
fn w0_check(support: &DegreeSupport, g: u32, b2: &[PlaneTree]) -> CheckOutcome {
    let want: HashSet<Vec<u32>> = b2.iter().map(|t| t.canonical_code()).collect();
    let mut hit = HashSet::new();
    let mut witness = None;
    for t in generate_blossom_trees(support, g, RootKind::Leaf, Some(0)) {
        match w0_bijection(&t) {
            Ok(W0Image::Balanced(_)) => {}
            Ok(W0Image::Rerooted(x)) => {
                let code = x.canonical_code();
                let back = w0_inverse(&W0Image::Rerooted(x.clone())).map(|b| b.canonical_code());
                if x.degree_profile() != t.degree_profile()
                    || !want.contains(&code)
                    || !hit.insert(code)
                    || back.ok() != Some(t.canonical_code())
                {
                    witness.get_or_insert_with(|| format!("tree {t} reroots to {x}"));
                }
            }
            Err(e) => {
                witness.get_or_insert_with(|| format!("tree {t}: {e}"));
            }
        }
    }
    if witness.is_none() && hit.len() != want.len() {
        witness = Some(format!("{} of {} B2 trees reached", hit.len(), want.len()));
    }
    CheckOutcome::new(format!("W0 = W0* + B2 by rerooting, grade {g}"), witness)
}

fn closed_forms(t: usize) -> Vec<CheckOutcome> {
    let t = t as u32;
    let mut out = Vec::new();
    let g4 = vertex_grading(t, &[4]);
    let g3 = vertex_grading(t, &[3]);
    let var = |g: &Grading, v| Series::var(g, v);
    let ubar = |g: &Grading| Series::constant(g, RatFunc::u_bar());
    let sq = RatFunc::u_minus_ubar().pow(2);
    let tree24 = Tree24 {
        v: ubar(&g4),
        w: ubar(&g4),
        x: var(&g4, VarId::big_x(4)).scale(&sq),
        y: var(&g4, VarId::big_y(4)).scale(&sq),
    };
    let residual = tree24.solve().and_then(|s| residual_check(&tree24, &s.sol.values));
    out.push(CheckOutcome::new(
        "P equation residual (degrees 2, 4)",
        match residual {
            Ok(r) => r.witness.map(|(_, m, c)| format!("{m}: {c}")),
            Err(e) => Some(e.to_string()),
        },
    ));
    let tree23 = Tree23 { v: Series::zero(&g3), w: Series::one(&g3), x: var(&g3, VarId::big_x(3)), y: var(&g3, VarId::big_y(3)) };
    let residual = tree23.solve().and_then(|s| residual_check(&tree23, &s.sol.values));
    out.push(CheckOutcome::new(
        "(P, Q, R) system residual (degrees 2, 3)",
        match residual {
            Ok(r) => r.witness.map(|(_, m, c)| format!("{m}: {c}")),
            Err(e) => Some(e.to_string()),
        },
    ));
    out.push(compare("hard tetravalent: closed = tree route", hard_tetravalent_closed(&g4), hard_particle_gf(&[4], &[4], &g4)));
    out.push(compare("hard trivalent: closed = tree route", hard_trivalent_closed(&g3), hard_particle_gf(&[3], &[3], &g3)));
    out.push(compare(
        "Ising quasi-tetravalent: closed = tree route",
        with_root_marker(&g4, ising_quasi_tetravalent_closed(&g4)),
        ising_gf_deg2root(&[4], &[4], &g4),
    ));
    out.push(compare(
        "Ising quasi-cubic: closed = tree route",
        with_root_marker(&g3, ising_quasi_cubic_closed(&g3)),
        ising_gf_deg2root(&[3], &[3], &g3),
    ));
    out.push(compare("Ising tetravalent: closed = integral route", ising_tetravalent_closed(&g4), ising_regular(4, &g4)));
    out.push(compare(
        "hard tetravalent = limit of quasi-tetravalent Ising",
        ising_quasi_tetravalent_closed(&g4).and_then(|i| hard_from_ising_limit(&i)),
        hard_tetravalent_closed(&g4),
    ));
    out
}

/// Rooted planar maps with `n` edges: `2·3^n (2n)! / (n! (n+2)!)`.
pub fn tutte_count(n: usize) -> BigInt {
    let fact = |k: usize| (1..=k).fold(BigInt::from(1), |a, i| a * i);
    BigInt::from(2) * BigInt::from(3).pow(n as u32) * fact(2 * n) / (fact(n) * fact(n + 2))
}

fn normalization(n: usize) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for scheme in [OracleScheme::FixedInvolution, OracleScheme::FixedRotation] {
        let bad = (0..=n).find_map(|k| {
            let (got, want) = (rooted_map_count(k, scheme), tutte_count(k));
            (got != want).then(|| format!("{k} edges: {got} rooted maps, expected {want}"))
        });
        out.push(CheckOutcome::new(format!("{scheme:?}: rooted map counts"), bad));
    }
    out
}
