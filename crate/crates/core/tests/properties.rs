use blossom_core::gf::{solve_wb, ChargeFamily, WeightSystem};
use blossom_core::series::Poly;
use blossom_core::trees::{generate_blossom_trees, DegreeSupport, RootKind};
use blossom_core::{Grading, RatFunc, Series, VarId};
use num_rational::BigRational;
use proptest::prelude::*;

/// With degrees divisible by `m`, total charges in `[1, m−1]` do not occur,
/// so a tree of total charge `m` has no weak edge.
#[test]
fn divisible_degrees_have_no_weak_edges() {
    for (m, grade) in [(3usize, 15u32), (4, 16), (5, 15)] {
        let ks: Vec<usize> = (1..=grade as usize / m).map(|k| k * m).collect();
        let support = DegreeSupport::edge_graded(ks.clone(), ks);
        let mut seen = 0;
        for (kind, shift) in [(RootKind::Leaf, 1), (RootKind::Bud, -1)] {
            for total in 1..m as i32 {
                assert!(generate_blossom_trees(&support, grade, kind, Some(total - shift)).is_empty());
            }
            for t in generate_blossom_trees(&support, grade, kind, Some(m as i32 - shift)) {
                assert!(t.weak_edges().unwrap().is_empty(), "m = {m}: {t}");
                seen += 1;
            }
        }
        assert!(seen > 0, "m = {m}");
    }
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    // products of the tracked factors u, u ± 1 with a small free part
    (0..3usize, 0..3usize, 0..3usize, prop::collection::vec(-3i64..=3, 1..4)).prop_map(|(a, b, c, free)| {
        let mut p = Poly::from_ints(&free);
        for (k, f) in [(a, [0, 1]), (b, [-1, 1]), (c, [1, 1])] {
            for _ in 0..k {
                p = p.mul(&Poly::from_ints(&f));
            }
        }
        p
    })
}

fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
    (arb_poly(), arb_poly()).prop_filter_map("nonzero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_field_laws(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.sub(&a), RatFunc::zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), RatFunc::one());
        }
        // arithmetic lands on the same reduced form as direct construction
        let direct = RatFunc::new(a.num().mul(&b.den()).add(&b.num().mul(&a.den())), a.den().mul(&b.den())).unwrap();
        prop_assert_eq!(a.add(&b), direct);
        prop_assert_eq!(RatFunc::parse(&a.to_string()).unwrap(), a.clone());
        prop_assert_eq!(a.pow(3), a.mul(&a).mul(&a));
    }

    #[test]
    fn tree_system_holds(
        whites in prop::collection::btree_set(1usize..=5, 1..4),
        blacks in prop::collection::btree_set(1usize..=5, 1..4),
        order in 2u32..=6,
    ) {
        let whites: Vec<usize> = whites.into_iter().collect();
        let blacks: Vec<usize> = blacks.into_iter().collect();
        let g = Grading::new(order, whites.iter().map(|&k| (VarId::x(k), 1)).chain(blacks.iter().map(|&k| (VarId::y(k), 1))));
        let ws = WeightSystem::indeterminate(&g, &whites, &blacks).unwrap();
        let t = solve_wb(&ws).unwrap();
        let lhs_w = rhs(&whites, VarId::x, &t.b, 1, &g).select(|i| i >= 0);
        let lhs_b = rhs(&blacks, VarId::y, &t.w, -1, &g).select(|i| i <= 1);
        prop_assert_eq!(lhs_w, t.w.clone());
        prop_assert_eq!(lhs_b, t.b.clone());
        for (_, s) in t.w.iter().chain(t.b.iter()) {
            for (_, c) in s.terms() {
                let c = c.as_constant().unwrap();
                prop_assert!(c.is_integer() && c > BigRational::from_integer(0.into()));
            }
        }
    }
}

/// `Σ v_{k}(z^sign + F)^{k−1}`.
fn rhs(ks: &[usize], var: fn(usize) -> VarId, f: &ChargeFamily, sign: i32, g: &Grading) -> ChargeFamily {
    let step = ChargeFamily::term(sign, Series::one(g)).add(f);
    let mut out = ChargeFamily::zero(g);
    for &k in ks {
        out = out.add(&step.pow(k as u32 - 1).scale(&Series::var(g, var(k))));
    }
    out
}
