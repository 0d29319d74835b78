//! Closure and opening against brute-force leg-map enumeration.

use std::collections::{BTreeMap, HashSet};

use blossom_core::maps::{closure, enumerate_leg_maps, opening, Color, CombMap, DegreeProfile};
use blossom_core::trees::{generate_blossom_trees, DegreeSupport, PlaneTree, RootKind};

fn balanced(support: &DegreeSupport, grade: u32, charge: i32) -> Vec<PlaneTree> {
    generate_blossom_trees(support, grade, RootKind::Leaf, Some(charge))
        .into_iter()
        .filter(|t| t.is_balanced().unwrap())
        .collect()
}

fn per_profile(it: impl Iterator<Item = DegreeProfile>) -> BTreeMap<DegreeProfile, usize> {
    let mut out = BTreeMap::new();
    for p in it {
        *out.entry(p).or_default() += 1;
    }
    out
}

fn codes(maps: &[CombMap]) -> HashSet<Vec<u32>> {
    maps.iter().map(|m| m.canonical_code()).collect()
}

/// Closure maps the balanced trees onto the enumerated leg maps, and opening
/// undoes it.
fn check_inverse(trees: &[PlaneTree], maps: &[CombMap]) {
    let want = codes(maps);
    assert_eq!(trees.len(), maps.len());
    let mut got = HashSet::new();
    for t in trees {
        let m = closure(t).unwrap();
        assert_eq!(m.degree_profile(), t.degree_profile());
        assert!(got.insert(m.canonical_code()));
        assert_eq!(opening(&m).unwrap().canonical_code(), t.canonical_code(), "{t} -> {m}");
    }
    assert_eq!(got, want);
    for m in maps {
        let t = opening(m).unwrap();
        assert!(t.is_blossom() && t.is_balanced().unwrap(), "{m} -> {t}");
        assert_eq!(closure(&t).unwrap().canonical_code(), m.canonical_code());
    }
}

#[test]
fn one_leg_maps_and_balanced_trees() {
    let e = 6;
    let maps = enumerate_leg_maps(1, e, |_| true);
    let support = DegreeSupport::edge_graded(1..=e + 1, 1..=e);
    let trees = balanced(&support, 2 * e as u32 + 1, 0);
    check_inverse(&trees, &maps);
}

#[test]
fn two_leg_maps_per_profile() {
    let e = 6;
    let maps = enumerate_leg_maps(2, e, |_| true);
    let support = DegreeSupport::edge_graded(1..=e + 2, 1..=e);
    let trees = balanced(&support, 2 * e as u32 + 2, 1);
    assert_eq!(
        per_profile(trees.iter().map(|t| t.degree_profile())),
        per_profile(maps.iter().map(|m| m.degree_profile()))
    );
    for t in &trees {
        let m = closure(t).unwrap();
        assert_eq!(m.half_edges().count(), 2);
        assert!(m.is_planar());
    }
}

fn multiples_of(m: usize) -> impl Fn(&DegreeProfile) -> bool + Sync {
    move |p| p.white.iter().chain(&p.black).all(|d| d % m == 0)
}

#[test]
fn m_leg_maps_with_degrees_multiple_of_m() {
    for (m, e) in [(3usize, 6usize), (4, 8)] {
        let maps = enumerate_leg_maps(m, e, multiples_of(m));
        let degs: Vec<usize> = (1..=(e + m) / m).map(|k| k * m).collect();
        let support = DegreeSupport::edge_graded(degs.clone(), degs);
        let trees = balanced(&support, (2 * e + m) as u32, m as i32 - 1);
        assert!(!maps.is_empty());
        check_inverse(&trees, &maps);
    }
}

fn marked(maps: &[CombMap], color: Color) -> BTreeMap<DegreeProfile, usize> {
    let mut out = BTreeMap::new();
    for m in maps {
        for v in 0..m.num_vertices() {
            let ds = m.vertex_darts(v);
            if m.color_of_vertex(v) == color && ds.len() == 1 && !m.is_half_edge(ds[0]) {
                *out.entry(m.degree_profile()).or_default() += 1;
            }
        }
    }
    out
}

#[test]
fn trees_without_balance_and_marked_vertices() {
    let e = 6;
    let maps = enumerate_leg_maps(1, e, |_| true);
    let support = DegreeSupport::edge_graded(1..=e + 1, 1..=e);
    let grade = 2 * e as u32;

    let leaf = generate_blossom_trees(&support, grade, RootKind::Leaf, Some(1));
    let with_black = per_profile(leaf.iter().map(|t| {
        let p = t.degree_profile();
        DegreeProfile::new(p.white, p.black.into_iter().chain([1]).collect())
    }));
    assert_eq!(with_black, marked(&maps, Color::Black));

    let bud = generate_blossom_trees(&support, grade, RootKind::Bud, Some(1));
    let with_white = per_profile(bud.iter().map(|t| {
        let p = t.degree_profile();
        DegreeProfile::new(p.white.into_iter().chain([1]).collect(), p.black)
    }));
    assert_eq!(with_white, marked(&maps, Color::White));
}
