use std::hint::black_box;

use blossom_core::gf::{
    bipartite_map_gf, hard_tetravalent_closed, ising_quasi_tetravalent_closed, ising_regular, solve_wb, WeightSystem,
};
use blossom_core::maps::{enumerate_leg_maps, perm_pair_map_series, rooted_map_count, OracleScheme};
use blossom_core::suites::{edge_grading, vertex_grading};
use blossom_core::trees::{generate_blossom_trees, DegreeSupport, RootKind};
use blossom_core::RatFunc;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn ratfunc(c: &mut Criterion) {
    let a = RatFunc::u_minus_ubar().pow(3);
    let b = RatFunc::one().sub(&RatFunc::u_bar().pow(2)).inv().unwrap();
    c.bench_function("ratfunc add+mul", |bench| bench.iter(|| black_box(&a).add(black_box(&b)).mul(&a)));
}

fn tree_solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("tree solver");
    for n in [4usize, 6] {
        let g = edge_grading(n);
        let ks: Vec<usize> = (1..=n + 1).collect();
        let ws = WeightSystem::indeterminate(&g, &ks, &ks).unwrap();
        group.bench_with_input(BenchmarkId::new("solve_wb", n), &ws, |bench, ws| bench.iter(|| solve_wb(ws).unwrap()));
        group.bench_with_input(BenchmarkId::new("map series", n), &ws, |bench, ws| {
            bench.iter(|| bipartite_map_gf(ws).unwrap())
        });
    }
    group.finish();
}

fn models(c: &mut Criterion) {
    let mut group = c.benchmark_group("models");
    group.sample_size(10);
    let g = vertex_grading(4, &[4]);
    group.bench_function("hard tetravalent, order 4", |bench| bench.iter(|| hard_tetravalent_closed(&g).unwrap()));
    group.bench_function("Ising quasi-tetravalent, order 4", |bench| {
        bench.iter(|| ising_quasi_tetravalent_closed(&g).unwrap())
    });
    let g = vertex_grading(2, &[4]);
    group.bench_function("Ising tetravalent integral, order 2", |bench| bench.iter(|| ising_regular(4, &g).unwrap()));
    group.finish();
}

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracles");
    group.sample_size(10);
    let g = edge_grading(4);
    group.bench_function("permutation pairs, 4 edges", |bench| bench.iter(|| perm_pair_map_series(4, &g)));
    for scheme in [OracleScheme::FixedInvolution, OracleScheme::FixedRotation] {
        group.bench_function(format!("rooted maps, 4 edges, {scheme:?}"), |bench| {
            bench.iter(|| rooted_map_count(4, scheme))
        });
    }
    group.finish();
}

fn bijections(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    group.sample_size(10);
    let support = DegreeSupport::edge_graded(1..=6, 1..=5);
    group.bench_function("balanced trees, 5 edges", |bench| {
        bench.iter(|| generate_blossom_trees(&support, 11, RootKind::Leaf, Some(0)))
    });
    group.bench_function("1-leg maps, 5 edges", |bench| bench.iter(|| enumerate_leg_maps(1, 5, |_| true)));
    group.finish();
}

criterion_group!(benches, ratfunc, tree_solver, models, oracles, bijections);
criterion_main!(benches);
