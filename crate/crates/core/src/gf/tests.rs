use super::*;
use crate::maps::perm_pair_map_series;
use crate::series::{parse_series_text, Grading, RatFunc, Series, VarId};

/// Both colors weigh their degree, so grade `2n` means `n` edges.
fn edge_grading(edges: u32) -> Grading {
    Grading::new(2 * edges, (1..=edges as usize + 1).flat_map(|k| [(VarId::x(k), k as u32), (VarId::y(k), k as u32)]))
}

fn unit_grading(order: u32, vars: &[VarId]) -> Grading {
    Grading::new(order, vars.iter().map(|&v| (v, 1)))
}

#[test]
fn chain_support_closed_form() {
    let vars = [VarId::x(1), VarId::x(2), VarId::y(2)];
    let g = unit_grading(7, &vars);
    let ws = WeightSystem::indeterminate(&g, &[1, 2], &[2]).unwrap();
    let t = solve_wb(&ws).unwrap();
    let [x1, x2, y2] = vars.map(|v| Series::var(&g, v));
    let geo = (Series::one(&g) - &x2 * &y2).reciprocal().unwrap();
    assert_eq!(t.w(0), &x1 * &geo);
    assert_eq!(t.w(1), &x2 * &geo);
    assert_eq!(t.b(-1), y2.clone());
    assert_eq!(t.b(0), &y2 * t.w(0));
    assert_eq!(t.b(1), &y2 * t.w(1));
    assert!(t.b(2).is_zero() && t.b(3).is_zero());
    let m = bipartite_map_gf(&ws).unwrap();
    assert_eq!(m, &y2 * (&x1 * &x1 * &geo * &geo + &x2 * &geo));
}

#[test]
fn zero_weights() {
    let g = unit_grading(4, &[VarId::x(3)]);
    let ws = WeightSystem::new(&g, Default::default(), Default::default()).unwrap();
    let t = solve_wb(&ws).unwrap();
    assert_eq!(t.w.range(), None);
    assert_eq!(t.b.range(), None);
}

#[test]
fn ising_grade_zero_sector() {
    let g = unit_grading(0, &[VarId::big_x(4), VarId::big_y(4)]);
    let ws = ising_weights(&[4], &[4], &g).unwrap();
    let t = solve_wb(&ws).unwrap();
    let ub = RatFunc::u_bar();
    let den = RatFunc::one().sub(&ub.mul(&ub));
    assert_eq!(t.w(1).constant_term(), ub.div(&den).unwrap());
    assert_eq!(t.b(1).constant_term(), ub.mul(&ub).div(&den).unwrap());
    assert!(t.w(0).is_zero());
}

#[test]
fn grade_zero_weights_rejected() {
    let g = unit_grading(3, &[VarId::x(3)]);
    let mut white = std::collections::BTreeMap::new();
    white.insert(3, Series::one(&g));
    assert!(matches!(WeightSystem::new(&g, white, Default::default()), Err(crate::Error::NonConvergent(_))));
    let mut white = std::collections::BTreeMap::new();
    let mut black = std::collections::BTreeMap::new();
    white.insert(2, Series::one(&g));
    black.insert(2, Series::one(&g));
    let ws = WeightSystem::new(&g, white, black).unwrap();
    assert!(matches!(solve_wb(&ws), Err(crate::Error::Singular(_))));
}

#[test]
fn map_series_first_terms() {
    let g = edge_grading(4);
    let ws = WeightSystem::indeterminate(&g, &(1..=5).collect::<Vec<_>>(), &(1..=5).collect::<Vec<_>>()).unwrap();
    let m = bipartite_map_gf(&ws).unwrap();
    let want = parse_series_text(
        "x1^2*y2\t1\nx2*y2\t1\n\
         x1*x2*y1*y2\t2\nx3*y1*y2\t2\n\
         x1*x3*y1^2*y2\t2\nx4*y1^2*y2\t3\nx2^2*y1^2*y2\t1\n\
         x1*x3*y2^2\t4\nx1^2*x2*y2^2\t2\nx4*y2^2\t2\nx2^2*y2^2\t1\n",
        &g,
    )
    .unwrap();
    assert_eq!(m.first_difference(&want), None);
}

#[test]
fn map_series_matches_permutations() {
    let n = 5;
    let g = edge_grading(n);
    let ks: Vec<usize> = (1..=n as usize + 1).collect();
    let ws = WeightSystem::indeterminate(&g, &ks, &ks).unwrap();
    let m = bipartite_map_gf(&ws).unwrap();
    assert_eq!(m.first_difference(&perm_pair_map_series(n as usize, &g)), None);
}

#[test]
fn ising_quasi_tetravalent_first_terms() {
    let g = unit_grading(2, &[VarId::big_x(4), VarId::big_y(4)]);
    let i = ising_gf_deg2root(&[4], &[4], &g).unwrap();
    let want = "Y2\t1\nX4*Y2\t2u^2\nY2*Y4\t2\nX4^2*Y2\t9u^2\nY2*Y4^2\t9\nX4*Y2*Y4\t6u^4+12u^2\n";
    assert_eq!(i, parse_series_text(want, &g).unwrap());
}

fn xy4(order: u32) -> (Grading, Series, Series) {
    let g = unit_grading(order, &[VarId::big_x(4), VarId::big_y(4)]);
    let (x, y) = (Series::var(&g, VarId::big_x(4)), Series::var(&g, VarId::big_y(4)));
    (g, x, y)
}

#[test]
fn tree24_grade_zero() {
    let (g, x, y) = xy4(0);
    let v = Series::constant(&g, RatFunc::u_bar());
    let t = Tree24 { v: v.clone(), w: v, x, y }.solve().unwrap();
    let ub = RatFunc::u_bar();
    let want = RatFunc::one().sub(&ub.mul(&ub)).inv().unwrap();
    assert_eq!(t.p(), &Series::constant(&g, want));
}

#[test]
fn tree24_matches_tree_solver() {
    let (g, x, y) = xy4(4);
    let v = Series::constant(&g, RatFunc::u_bar());
    let t = Tree24 { v: v.clone(), w: v.clone(), x: x.clone(), y: y.clone() }.solve().unwrap();
    let white = [(2, v.clone()), (4, x)].into_iter().collect();
    let black = [(2, v), (4, y)].into_iter().collect();
    let wb = solve_wb(&WeightSystem::new(&g, white, black).unwrap()).unwrap();
    assert_eq!(t.w1, wb.w(1));
    assert_eq!(t.w3, wb.w(3));
    assert_eq!(t.b3, wb.b(3));
    assert_eq!(t.p(), &(Series::one(&g) + wb.b(1)));
}

#[test]
fn tree23_matches_tree_solver() {
    let g = unit_grading(5, &[VarId::big_x(3), VarId::big_y(3)]);
    let (x, y) = (Series::var(&g, VarId::big_x(3)), Series::var(&g, VarId::big_y(3)));
    for (v, w) in [(RatFunc::zero(), RatFunc::one()), (RatFunc::u_bar(), RatFunc::u_bar())] {
        let (v, w) = (Series::constant(&g, v), Series::constant(&g, w));
        let t = Tree23 { v: v.clone(), w: w.clone(), x: x.clone(), y: y.clone() }.solve().unwrap();
        let white = [(2, v), (3, x.clone())].into_iter().collect();
        let black = [(2, w), (3, y.clone())].into_iter().collect();
        let wb = solve_wb(&WeightSystem::new(&g, white, black).unwrap()).unwrap();
        assert_eq!(t.p, Series::one(&g) + wb.b(1));
        assert_eq!(t.r, wb.b(0));
        for (got, want) in [(&t.w0, wb.w(0)), (&t.w1, wb.w(1)), (&t.w2, wb.w(2)), (&t.b2, wb.b(2)), (&t.b3, wb.b(3))] {
            assert_eq!(got, &want);
        }
    }
}

#[test]
fn tree23_reduced_system() {
    // at v = 0, w = 1 the pair (P, Q) solves a two-equation system on its own
    let g = unit_grading(6, &[VarId::big_x(3), VarId::big_y(3)]);
    let (x, y) = (Series::var(&g, VarId::big_x(3)), Series::var(&g, VarId::big_y(3)));
    let t = Tree23 { v: Series::zero(&g), w: Series::one(&g), x: x.clone(), y: y.clone() }.solve().unwrap();
    let (p, q) = (&t.p, &t.q);
    let one = Series::one(&g);
    let n = |k| Series::from_int(&g, k);
    let lin = &one - n(4) * &x * &y * p;
    let inv = lin.reciprocal().unwrap();
    let rhs_p = &one + n(2) * &x * &y * p * p + n(2) * &x * p * q * (&one + &y * q) * (&one + n(2) * &y * q) * &inv;
    let rhs_q = n(2) * &x * p * &inv + &x * q * q * (&one + &y * q).pow(2) * inv.pow(3);
    assert_eq!(p, &rhs_p);
    assert_eq!(q, &rhs_q);
}

#[test]
fn residuals_and_negative_control() {
    let (g, x, y) = xy4(6);
    let v = Series::constant(&g, RatFunc::u_bar());
    let sys = Tree24 { v: v.clone(), w: v, x: x.clone(), y };
    let t = sys.solve().unwrap();
    assert!(residual_check(&sys, &t.sol.values).unwrap().is_zero());
    let bad = vec![t.p() + &x];
    let rep = residual_check(&sys, &bad).unwrap();
    let (_, m, _) = rep.witness.unwrap();
    assert_eq!(g.degree(&m), 1);
    let g3 = unit_grading(6, &[VarId::big_x(3), VarId::big_y(3)]);
    let sys = Tree23 {
        v: Series::zero(&g3),
        w: Series::one(&g3),
        x: Series::var(&g3, VarId::big_x(3)),
        y: Series::var(&g3, VarId::big_y(3)),
    };
    let t = sys.solve().unwrap();
    assert!(residual_check(&sys, &t.sol.values).unwrap().is_zero());
}

#[test]
fn constellation_first_terms() {
    let (g, x, y) = xy4(5);
    let a = newton(&Constellation { m: 4, x: x.clone(), y: y.clone() }).unwrap();
    let xy = &x * &y;
    assert_eq!(a.get("A").unwrap(), &(&xy + Series::from_int(&g, 9) * &xy * &xy));
}

fn markers(order: u32, m: usize) -> Grading {
    unit_grading(order, &[VarId::big_x(m), VarId::big_y(m)])
}

#[test]
fn quasi_tetravalent_closed_matches_general_route() {
    let g = markers(3, 4);
    let closed = ising_quasi_tetravalent_closed(&g).unwrap();
    let general = ising_gf_deg2root(&[4], &[4], &g).unwrap();
    assert_eq!(Series::var(&g, VarId::big_y(2)) * closed, general);
}

#[test]
fn quasi_cubic_closed_matches_general_route() {
    let g = markers(4, 3);
    let closed = ising_quasi_cubic_closed(&g).unwrap();
    let general = ising_gf_deg2root(&[3], &[3], &g).unwrap();
    assert_eq!(Series::var(&g, VarId::big_y(2)) * closed, general);
}

#[test]
fn hard_particles_closed_match_general_route() {
    let g = markers(4, 4);
    assert_eq!(hard_tetravalent_closed(&g).unwrap(), hard_particle_gf(&[4], &[4], &g).unwrap());
    let g = markers(5, 3);
    assert_eq!(hard_trivalent_closed(&g).unwrap(), hard_particle_gf(&[3], &[3], &g).unwrap());
}

#[test]
fn hard_particles_without_particles() {
    // Y = 0: every vertex vacant, maps rooted at an edge
    let g = markers(4, 4);
    let h = hard_particle_gf(&[4], &[4], &g).unwrap();
    let plain = h.filter(|m| m.exponent(VarId::big_y(4)) == 0);
    let g0 = unit_grading(4, &[VarId::big_x(4)]);
    let only_x = hard_particle_gf(&[4], &[], &g0).unwrap();
    assert_eq!(plain.regrade(&g0), only_x);
}

#[test]
fn hard_limit_of_quasi_ising() {
    let g = markers(3, 4);
    let i = ising_quasi_tetravalent_closed(&g).unwrap();
    assert_eq!(hard_from_ising_limit(&i).unwrap(), hard_tetravalent_closed(&g).unwrap());
}

#[test]
fn regular_constellation_parts() {
    let mt = regular_mtilde(4, 4, 0).unwrap();
    let g = mt.grading().clone();
    let xy = Series::var(&g, VarId::x(4)) * Series::var(&g, VarId::y(4));
    let at_zero = mt.filter(|m| m.exponent(VarId::V) == 0);
    assert_eq!(at_zero, &xy + (&xy * &xy).scale_int(6));
}

#[test]
fn tetravalent_ising_two_routes() {
    let g = markers(3, 4);
    let via_integral = ising_regular(4, &g).unwrap();
    let closed = ising_tetravalent_closed(&g).unwrap();
    assert_eq!(via_integral, closed);
    let want = parse_series_text("X4\t2\nX4^2\t9\nX4*Y4\tu^4+8u^2\n", &g).unwrap();
    assert_eq!(via_integral.truncate(2), want);
}

#[test]
fn regular_reconstruction_is_order_stable() {
    for (m, t) in [(3, 4), (4, 3)] {
        let g = markers(t, m);
        let z = (m as u32) * t;
        assert_eq!(ising_regular_bounded(m, &g, z).unwrap(), ising_regular_bounded(m, &g, 2 * z).unwrap());
    }
}
