use super::*;
use crate::series::{parse_series_text, Grading, RatFunc, Series, VarId};
use num_bigint::BigInt;

fn edge_grading(order: u32) -> Grading {
    Grading::new(order, (1..=2 * order as usize).map(|k| (VarId::x(k), k as u32)))
}

#[test]
fn perm_pairs_on_two_edges() {
    let g = edge_grading(2);
    let s = perm_pair_map_series(2, &g);
    let want = parse_series_text("x1^2*y2\t1\nx2*y2\t1\n", &g).unwrap();
    assert_eq!(s, want);
    // one edge: μ = (1) has no part 2
    assert!(perm_pair_map_series(1, &g).is_zero());
    assert_eq!(enumerate_perm_pairs(1).values().sum::<u64>(), 1);
}

#[test]
fn perm_series_first_terms() {
    let g = edge_grading(4);
    let s = perm_pair_map_series(4, &g);
    let want = parse_series_text(
        "x1^2*y2\t1\nx2*y2\t1\n\
         x1*x2*y1*y2\t2\nx3*y1*y2\t2\n\
         x1*x3*y1^2*y2\t2\nx4*y1^2*y2\t3\nx2^2*y1^2*y2\t1\n\
         x1*x3*y2^2\t4\nx1^2*x2*y2^2\t2\nx4*y2^2\t2\nx2^2*y2^2\t1\n",
        &g,
    )
    .unwrap();
    assert_eq!(s.first_difference(&want), None);
}

#[test]
fn rooted_map_counts_small() {
    for scheme in [OracleScheme::FixedInvolution, OracleScheme::FixedRotation] {
        let counts: Vec<BigInt> = (0..=4).map(|n| rooted_map_count(n, scheme)).collect();
        assert_eq!(counts, [1, 2, 9, 54, 378].map(BigInt::from));
    }
}

#[test]
fn dart_oracles_agree_with_permutations() {
    let g = edge_grading(4);
    let perm = perm_pair_map_series(4, &g);
    for scheme in [OracleScheme::FixedInvolution, OracleScheme::FixedRotation] {
        let darts = bipartite_map_sum(4, scheme, &g);
        assert_eq!(darts.first_difference(&perm), None, "{scheme:?}");
    }
}

#[test]
fn perm_pair_round_trip_and_genus() {
    for n in 1..=4 {
        let perms = all_perms(n);
        for s in &perms {
            for r in &perms {
                let p = PermPair::new(s.clone(), r.clone()).unwrap();
                if !p.is_transitive() {
                    continue;
                }
                let m = from_perm_pair(&p).unwrap();
                assert_eq!(m.is_planar(), p.is_planar());
                assert_eq!(m.degree_profile(), p.degree_profile());
                let back = from_perm_pair(&to_perm_pair(&m).unwrap()).unwrap();
                assert_eq!(back.canonical_code(), m.canonical_code());
            }
        }
    }
}

#[test]
fn double_edge_encoding() {
    let p = PermPair::new(vec![1, 0], vec![1, 0]).unwrap();
    let m = from_perm_pair(&p).unwrap();
    assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (2, 2, 2));
    assert_eq!(m.degree_profile(), DegreeProfile::new(vec![2], vec![2]));
    assert!(p.is_planar());
    assert!(to_perm_pair(&PermPair::new(vec![0], vec![0]).map(|p| from_perm_pair(&p).unwrap()).unwrap()).is_ok());
}

fn vertex_grading(order: u32, degrees: &[usize]) -> Grading {
    Grading::new(order, degrees.iter().flat_map(|&k| [(VarId::big_x(k), 1), (VarId::big_y(k), 1)]))
}

#[test]
fn schemes_agree_on_model_sums() {
    let g = vertex_grading(2, &[4]);
    let root = IsingRoot { color: Color::Black, degree: Some(2) };
    let a = ising_sum(&MapClass::QuasiRegular(4), root, 2, OracleScheme::FixedInvolution, &g);
    let b = ising_sum(&MapClass::QuasiRegular(4), root, 2, OracleScheme::FixedRotation, &g);
    assert_eq!(a.first_difference(&b), None);
    let g = vertex_grading(4, &[3]);
    let a = hard_particle_sum(&MapClass::Regular(3), 2, OracleScheme::FixedInvolution, &g);
    let b = hard_particle_sum(&MapClass::Regular(3), 2, OracleScheme::FixedRotation, &g);
    assert_eq!(a.first_difference(&b), None);
}

#[test]
fn hard_particles_one_vertex() {
    let g = vertex_grading(1, &[4]);
    let h = hard_particle_sum(&MapClass::Regular(4), 1, OracleScheme::FixedRotation, &g);
    assert_eq!(h, Series::term(&g, crate::Monomial::var(VarId::big_x(4)), RatFunc::from_int(2)));
}

#[test]
fn ising_colorings_at_u_one() {
    // at u = 1 every rooted map weighs 2^(V−1) once the root color is fixed
    let g = vertex_grading(3, &[4]);
    let root = IsingRoot { color: Color::White, degree: None };
    let s = ising_sum(&MapClass::Regular(4), root, 3, OracleScheme::FixedRotation, &g);
    let mut at_one = num_rational::BigRational::from_integer(0.into());
    for (_, c) in s.terms() {
        at_one += c.eval(&num_rational::BigRational::from_integer(1.into())).unwrap();
    }
    let mut want = num_rational::BigRational::from_integer(0.into());
    for v in 1..=3 {
        let (count, f) = fold_rooted_maps(
            OracleScheme::FixedRotation,
            &vec![4; v],
            || 0u64,
            |a, _, r| *a += r.len() as u64,
            |a, b| a + b,
        );
        want += f * BigInt::from(count) * BigInt::from(1u64 << (v - 1));
    }
    assert_eq!(at_one, want);
}

#[test]
fn leg_maps_are_planar_and_rooted_at_legs() {
    let maps = enumerate_leg_maps(1, 3, |_| true);
    assert!(maps.iter().any(|m| m.num_darts() == 1));
    for m in &maps {
        assert!(m.is_planar() && m.is_bipartite());
        assert!(m.is_half_edge(m.root()));
        assert_eq!(m.half_edges().count(), 1);
    }
    // one edge: a white vertex with the leg and a black leaf, in two
    // rotations that coincide
    assert_eq!(maps.iter().filter(|m| m.num_edges() == 1).count(), 1);
}

#[test]
fn ising_first_terms() {
    let g = vertex_grading(2, &[4]);
    let quasi = IsingRoot { color: Color::Black, degree: Some(2) };
    let s = ising_sum(&MapClass::QuasiRegular(4), quasi, 2, OracleScheme::FixedRotation, &g);
    let want = "Y2\t1\nX4*Y2\t2u^2\nY2*Y4\t2\nX4^2*Y2\t9u^2\nY2*Y4^2\t9\nX4*Y2*Y4\t6u^4+12u^2\n";
    assert_eq!(s, parse_series_text(want, &g).unwrap());
    let tetra = IsingRoot { color: Color::White, degree: None };
    let s = ising_sum(&MapClass::Regular(4), tetra, 2, OracleScheme::FixedRotation, &g);
    assert_eq!(s, parse_series_text("X4\t2\nX4^2\t9\nX4*Y4\tu^4+8u^2\n", &g).unwrap());
}
