use super::*;
use crate::maps::{closure, opening};
use std::collections::{BTreeMap, HashSet};

fn tree(s: &str) -> PlaneTree {
    s.parse().unwrap()
}

#[test]
fn charges_of_small_trees() {
    let t0 = PlaneTree::t0();
    assert_eq!((t0.charge(), t0.total_charge()), (0, 1));
    let t = tree("W(r,l,l)");
    assert_eq!((t.charge(), t.total_charge()), (2, 3));
    let t = tree("W(r,B(u))");
    assert_eq!((t.charge(), t.total_charge()), (-1, 0));
}

#[test]
fn subtree_charges_sum_to_total() {
    let t = tree("W(r,B(u,u))");
    let d = t.edges()[0];
    let (cw, cb) = t.subtree_charges(d).unwrap();
    assert_eq!(cb, -2);
    assert_eq!(cw + cb, t.total_charge());
}

#[test]
fn matching_examples() {
    let m = bracket_match(&[(0, true), (1, false)]);
    assert_eq!(m.pairs, vec![(0, 1)]);
    assert!(m.single_leaves.is_empty());

    let t = tree("W(r,B(u),l)");
    assert!(t.is_balanced().unwrap());
    let t = tree("W(r,l,B(u))");
    let m = t.match_half_edges();
    assert!(!t.is_balanced().unwrap());
    assert_eq!(m.single_leaves.len(), 1);
    assert!(m.pairs.iter().any(|&(_, l)| l == t.root()));
    assert!(tree("B(r,W(l))").is_balanced().is_err());
}

#[test]
fn matching_is_cyclic_invariant() {
    let seq = [(0, false), (1, true), (2, true), (3, false), (4, false), (5, true), (6, false)];
    let base = {
        let mut p = bracket_match(&seq).pairs;
        p.sort();
        p
    };
    for k in 0..seq.len() {
        let rot: Vec<_> = seq[k..].iter().chain(&seq[..k]).copied().collect();
        let mut p = bracket_match(&rot).pairs;
        p.sort();
        assert_eq!(p, base);
    }
}

#[test]
fn blossom_rule_examples() {
    assert!(PlaneTree::t0().is_blossom());
    assert!(tree("W(r,B(u,u))").is_blossom());
    assert!(tree("W(r,B(W()))").is_blossom());
    // a white lower subtree with two buds below it has charge −2
    assert!(!tree("W(r,B(W(B(u,u))))").is_blossom());
    assert!("W(r,B(l))".parse::<PlaneTree>().is_err());
}

#[test]
fn serialization_round_trip() {
    for s in ["W(r)", "W(r,l,B(u,W(l)))", "B(r,W(l,l),u)", "W(r,B(),l)"] {
        assert_eq!(tree(s).to_string(), s);
    }
    let t = tree("W(r,l,B(u,W(l)))");
    let leaf = t.contour()[1];
    let back: PlaneTree = t.reroot(leaf).unwrap().to_string().parse().unwrap();
    assert_eq!(back.canonical_code(), t.reroot(leaf).unwrap().canonical_code());
}

#[test]
fn generation_trivial_cases() {
    let only = DegreeSupport::edge_graded([1], []);
    let ts = generate_blossom_trees(&only, 10, RootKind::Leaf, None);
    assert_eq!(ts.len(), 1);
    assert_eq!(ts[0].to_string(), "W(r)");
    assert!(generate_blossom_trees(&DegreeSupport::default(), 10, RootKind::Leaf, None).is_empty());
}

fn small_support() -> DegreeSupport {
    DegreeSupport::edge_graded(1..=4, 1..=4)
}

#[test]
fn generated_trees_are_distinct_blossoms() {
    let ts = generate_blossom_trees(&small_support(), 10, RootKind::Leaf, None);
    let mut codes = HashSet::new();
    for t in &ts {
        assert!(t.is_blossom(), "{t}");
        assert!(codes.insert(t.canonical_code()));
        assert!(small_support().grade(t).unwrap() <= 10);
    }
}

#[test]
fn rerooting_charge_one_trees_keeps_blossom() {
    for t in generate_blossom_trees(&small_support(), 10, RootKind::Leaf, Some(0)) {
        for d in t.map().half_edges().collect::<Vec<_>>() {
            assert!(t.reroot(d).unwrap().is_blossom(), "{t} at {d}");
        }
        for d in t.edges() {
            let (black, white) = t.charge_rules_at(d);
            assert_eq!(black, white);
        }
    }
}

#[test]
fn opening_inverts_closure_on_charge_one() {
    for t in generate_blossom_trees(&small_support(), 12, RootKind::Leaf, Some(0)) {
        if !t.is_balanced().unwrap() {
            continue;
        }
        let m = closure(&t).unwrap();
        assert_eq!(m.half_edges().count(), 1);
        assert_eq!(m.num_edges(), t.num_edges() + t.map().half_edges().filter(|&d| t.is_bud(d)).count());
        assert_eq!(m.degree_profile(), t.degree_profile());
        let back = opening(&m).unwrap();
        assert_eq!(back.canonical_code(), t.canonical_code(), "{t} -> {m} -> {back}");
    }
}

#[test]
fn w0_bijection_round_trip_and_count() {
    let s = small_support();
    let g = 12;
    let w0 = generate_blossom_trees(&s, g, RootKind::Leaf, Some(0));
    let b2: HashSet<_> = generate_blossom_trees(&s, g, RootKind::Bud, Some(2)).into_iter().map(|t| t.canonical_code()).collect();
    let mut hit = HashSet::new();
    let mut balanced = 0;
    for t in &w0 {
        match w0_bijection(t).unwrap() {
            W0Image::Balanced(_) => balanced += 1,
            W0Image::Rerooted(x) => {
                assert!(x.is_blossom());
                assert_eq!(x.degree_profile(), t.degree_profile());
                assert!(b2.contains(&x.canonical_code()));
                assert!(hit.insert(x.canonical_code()));
                let back = w0_inverse(&W0Image::Rerooted(x)).unwrap();
                assert_eq!(back.canonical_code(), t.canonical_code());
            }
        }
    }
    assert_eq!(hit.len(), b2.len());
    assert_eq!(w0.len(), balanced + b2.len());
}

fn check_rho(conv: SigmaConvention, s: &DegreeSupport, g: u32) {
    let w1 = generate_blossom_trees(s, g, RootKind::Leaf, Some(1));
    let b3 = generate_blossom_trees(s, g, RootKind::Bud, Some(3));
    let b2 = generate_blossom_trees(s, g, RootKind::Bud, Some(2));
    let mut images = HashSet::new();
    let mut per_profile: BTreeMap<crate::maps::DegreeProfile, i64> = BTreeMap::new();
    for t in &w1 {
        *per_profile.entry(t.degree_profile()).or_default() += 1;
        if t.is_balanced().unwrap() {
            *per_profile.entry(t.degree_profile()).or_default() -= 1;
            continue;
        }
        let img = rho(t, conv).unwrap_or_else(|e| panic!("{t}: {e}"));
        let profile = match &img {
            RhoImage::Single(x) => x.degree_profile(),
            RhoImage::Pair(a, b) => a.degree_profile().merge(&b.degree_profile()),
        };
        assert_eq!(profile, t.degree_profile());
        let back = rho_inverse(&img, conv).unwrap_or_else(|e| panic!("{t} -> {img:?}: {e}"));
        assert_eq!(back.canonical_code(), t.canonical_code(), "{t}");
        let key = match &img {
            RhoImage::Single(x) => vec![x.canonical_code()],
            RhoImage::Pair(a, b) => vec![a.canonical_code(), b.canonical_code()],
        };
        assert!(images.insert(key));
    }
    for t in &b3 {
        *per_profile.entry(t.degree_profile()).or_default() -= 1;
    }
    for a in &b2 {
        for b in &b2 {
            if s.grade(a).unwrap() + s.grade(b).unwrap() <= g {
                *per_profile.entry(a.degree_profile().merge(&b.degree_profile())).or_default() -= 1;
            }
        }
    }
    assert!(per_profile.values().all(|&c| c == 0), "{per_profile:?}");
}

#[test]
fn rho_is_a_bijection() {
    check_rho(SigmaConvention::Contour, &small_support(), 12);
}

#[test]
fn rho_with_reversed_sigma() {
    check_rho(SigmaConvention::ReverseContour, &small_support(), 12);
}

#[test]
fn rho_cases_all_occur_and_biject_at_grade_16() {
    let s = small_support();
    for conv in [SigmaConvention::Contour, SigmaConvention::ReverseContour] {
        check_rho(conv, &s, 16);
    }
    let (mut single, mut equal, mut ordered, mut swapped) = (0, 0, 0, 0);
    for t in generate_blossom_trees(&s, 14, RootKind::Leaf, Some(1)) {
        if t.is_balanced().unwrap() {
            continue;
        }
        match rho(&t, SigmaConvention::Contour).unwrap() {
            RhoImage::Single(_) => single += 1,
            RhoImage::Pair(a, b) => match b2_depth(&a).unwrap().cmp(&b2_depth(&b).unwrap()) {
                std::cmp::Ordering::Equal => equal += 1,
                std::cmp::Ordering::Less => ordered += 1,
                std::cmp::Ordering::Greater => swapped += 1,
            },
        }
    }
    assert_eq!((single, equal, ordered, swapped), (950, 125, 13, 13));
}
