//! Tree and map series against enumeration.

use std::collections::BTreeMap;

use blossom_core::gf::{
    bipartite_map_gf, hard_particle_gf, hard_trivalent_closed, ising_gf_deg2root, ising_quasi_tetravalent_closed,
    ising_regular, ising_tetravalent_closed, leg_gfs, solve_wb, WeightSystem,
};
use blossom_core::maps::{
    hard_particle_sum, ising_sum, perm_pair_map_series, profile_monomial, Color, IsingRoot, MapClass, OracleScheme,
};
use blossom_core::trees::{generate_blossom_trees, DegreeSupport, PlaneTree, RootKind};
use blossom_core::{Grading, RatFunc, Series, VarId};
use num_rational::BigRational;
use num_traits::One;

fn edge_grading(edges: u32) -> Grading {
    Grading::new(2 * edges, (1..=2 * edges as usize).flat_map(|k| [(VarId::x(k), k as u32), (VarId::y(k), k as u32)]))
}

fn markers(order: u32, m: usize) -> Grading {
    Grading::new(order, [(VarId::big_x(m), 1), (VarId::big_y(m), 1)])
}

fn tree_series(trees: &[PlaneTree], g: &Grading) -> Series {
    let mut s = Series::zero(g);
    for t in trees {
        s.add_term(profile_monomial(&t.degree_profile()), RatFunc::one());
    }
    s
}

fn all_degrees(edges: u32) -> (Vec<usize>, DegreeSupport) {
    let ks: Vec<usize> = (1..=2 * edges as usize).collect();
    (ks.clone(), DegreeSupport::edge_graded(ks.clone(), ks))
}

#[test]
fn tree_series_count_blossom_trees() {
    let e = 4;
    let g = edge_grading(e);
    let (ks, support) = all_degrees(e);
    let t = solve_wb(&WeightSystem::indeterminate(&g, &ks, &ks).unwrap()).unwrap();
    let (lo, hi) = t.w.range().unwrap();
    assert_eq!(lo, 0);
    for i in lo..=hi {
        let trees = generate_blossom_trees(&support, 2 * e, RootKind::Leaf, Some(i));
        assert_eq!(t.w(i), tree_series(&trees, &g), "W_{i}");
    }
    let (lo, hi) = t.b.range().unwrap();
    assert_eq!(hi, 1);
    for i in lo..=hi {
        let trees = generate_blossom_trees(&support, 2 * e, RootKind::Bud, Some(i));
        assert_eq!(t.b(i), tree_series(&trees, &g), "B_{i}");
    }
    for (_, s) in t.w.iter().chain(t.b.iter()) {
        assert!(s.terms().all(|(_, c)| c.as_constant().is_some_and(|c| c.is_integer() && c >= BigRational::one())));
    }
}

fn balanced(support: &DegreeSupport, grade: u32, charge: i32) -> Vec<PlaneTree> {
    generate_blossom_trees(support, grade, RootKind::Leaf, Some(charge))
        .into_iter()
        .filter(|t| t.is_balanced().unwrap())
        .collect()
}

#[test]
fn balanced_trees_and_extended_reads() {
    let e = 5;
    let g = edge_grading(e);
    let (ks, support) = all_degrees(e);
    let t = solve_wb(&WeightSystem::indeterminate(&g, &ks, &ks).unwrap()).unwrap();
    let w0s = tree_series(&balanced(&support, 2 * e, 0), &g);
    let w1s = tree_series(&balanced(&support, 2 * e, 1), &g);
    assert_eq!(t.w(0), &w0s + t.b(2));
    assert_eq!(t.w(1), &w1s + t.b(3) + t.b(2) * t.b(2));
    let (l1, l2) = leg_gfs(&WeightSystem::indeterminate(&g, &ks, &ks).unwrap()).unwrap();
    assert_eq!((l1, l2), (w0s, w1s));
}

#[test]
fn degrees_divisible_by_m() {
    for (m, e) in [(3usize, 6u32), (4, 8)] {
        let g = edge_grading(e);
        let ks: Vec<usize> = (1..=2 * e as usize / m).map(|k| k * m).collect();
        let support = DegreeSupport::edge_graded(ks.clone(), ks.clone());
        let t = solve_wb(&WeightSystem::indeterminate(&g, &ks, &ks).unwrap()).unwrap();
        let top = m as i32 - 1;
        let star = tree_series(&balanced(&support, 2 * e, top), &g);
        assert_eq!(t.w(top), star + t.b(top + 2), "m = {m}");

        // one degree only: W_{m−1} = x(1 + B₁)^{m−1}
        let t = solve_wb(&WeightSystem::indeterminate(&g, &[m], &[m]).unwrap()).unwrap();
        let x = Series::var(&g, VarId::x(m));
        assert_eq!(t.w(top), x * (Series::one(&g) + t.b(1)).pow(top as u32));
    }
}

#[test]
fn map_series_against_permutations() {
    let n = 6;
    let g = edge_grading(n);
    let ks: Vec<usize> = (1..=n as usize + 1).collect();
    let m = bipartite_map_gf(&WeightSystem::indeterminate(&g, &ks, &ks).unwrap()).unwrap();
    assert_eq!(m.first_difference(&perm_pair_map_series(n as usize, &g)), None);
}

const SCHEME: OracleScheme = OracleScheme::FixedRotation;

#[test]
fn hard_particles_against_oracle() {
    let g = markers(3, 4);
    let oracle = hard_particle_sum(&MapClass::Regular(4), 3, SCHEME, &g);
    assert_eq!(hard_particle_gf(&[4], &[4], &g).unwrap(), oracle);
    let g = markers(4, 3);
    let oracle = hard_particle_sum(&MapClass::Regular(3), 4, SCHEME, &g);
    assert_eq!(hard_trivalent_closed(&g).unwrap(), oracle);
}

#[test]
fn ising_against_oracle() {
    let deg2 = IsingRoot { color: Color::Black, degree: Some(2) };
    let white = IsingRoot { color: Color::White, degree: None };
    let g = markers(3, 4);
    let y2 = Series::var(&g, VarId::big_y(2));
    let oracle = ising_sum(&MapClass::QuasiRegular(4), deg2, 3, SCHEME, &g);
    assert_eq!(y2 * ising_quasi_tetravalent_closed(&g).unwrap(), oracle);
    let oracle = ising_sum(&MapClass::Regular(4), white, 3, SCHEME, &g);
    assert_eq!(ising_tetravalent_closed(&g).unwrap(), oracle);

    let g = markers(4, 3);
    let oracle = ising_sum(&MapClass::QuasiRegular(3), deg2, 4, SCHEME, &g);
    assert_eq!(ising_gf_deg2root(&[3], &[3], &g).unwrap(), oracle);
    let oracle = ising_sum(&MapClass::Regular(3), white, 4, SCHEME, &g);
    assert_eq!(ising_regular(3, &g).unwrap(), oracle);
}

fn at_one(s: &Series) -> BTreeMap<String, BigRational> {
    s.terms().map(|(m, c)| (m.to_string(), c.eval(&BigRational::one()).unwrap())).collect()
}

#[test]
fn ising_series_are_integer_polynomials() {
    let g = markers(4, 4);
    for s in [ising_tetravalent_closed(&g).unwrap(), ising_quasi_tetravalent_closed(&g).unwrap()] {
        for (m, c) in s.terms() {
            assert!(c.is_polynomial(), "{m}");
            assert!(c.num().coeffs().iter().all(|a| a.is_integer() && *a >= BigRational::from_integer(0.into())), "{m}: {c}");
        }
        assert!(at_one(&s).values().all(|v| v.is_integer()));
    }
}
