use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kspack::exact::max_packing_exact;
use kspack::instance::{gen_projective_plane, gen_random, WeightRange};
use kspack::local_search::{log_local_search, t_local_search};
use kspack::multigraph::{find_dense_subgraph, Multigraph};
use kspack::relaxation::{
    build_intersecting_family_lp, build_standard_lp, enumerate_maximal_cliques, solve_lp,
    DEFAULT_CLIQUE_CAP,
};
use kspack::weighted_search::{square_imp, wishful_thinking, SquareImpConfig};
use kspack::{int, ratio, Budget, ConflictGraph, Instance};

fn random(n: usize, seed: u64, weighted: bool) -> Instance {
    let range = WeightRange::new(int(1), int(20)).unwrap();
    gen_random(n, n, 3, weighted.then_some(&range), seed).unwrap()
}

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    for n in [20, 30, 40] {
        let inst = random(n, 1, false);
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| max_packing_exact(black_box(inst)).unwrap())
        });
    }
    group.finish();
}

fn unweighted_local(c: &mut Criterion) {
    let inst = random(40, 2, false);
    let mut group = c.benchmark_group("local_search");
    for t in [2, 3] {
        group.bench_with_input(BenchmarkId::new("t", t), &t, |b, &t| {
            b.iter(|| t_local_search(black_box(&inst), t, &mut Budget::unlimited()).unwrap())
        });
    }
    group.bench_function("log eps=1/2", |b| {
        b.iter(|| {
            log_local_search(black_box(&inst), &ratio(1, 2), &mut Budget::unlimited()).unwrap()
        })
    });
    group.finish();
}

fn weighted_local(c: &mut Criterion) {
    let g = ConflictGraph::from_instance(&random(40, 3, true));
    let mut group = c.benchmark_group("weighted_search");
    group.bench_function("wishful", |b| {
        b.iter(|| wishful_thinking(black_box(&g), 4).unwrap())
    });
    group.bench_function("squareimp", |b| {
        b.iter(|| {
            square_imp(
                black_box(&g),
                SquareImpConfig { max_talons: 3 },
                &mut Budget::unlimited(),
            )
            .unwrap()
        })
    });
    group.finish();
}

fn relaxations(c: &mut Criterion) {
    let mut group = c.benchmark_group("lp");
    group.sample_size(10);
    for q in [3, 5] {
        let lp = build_standard_lp(&gen_projective_plane(q).unwrap());
        group.bench_with_input(BenchmarkId::new("standard plane", q), &lp, |b, lp| {
            b.iter(|| solve_lp(black_box(lp)))
        });
    }
    let inst = random(20, 4, false);
    let lp = build_intersecting_family_lp(&inst, DEFAULT_CLIQUE_CAP).unwrap();
    group.bench_function("intersecting random n=20", |b| {
        b.iter(|| solve_lp(black_box(&lp)))
    });
    let g = ConflictGraph::from_instance(&random(40, 5, false));
    group.bench_function("maximal cliques n=40", |b| {
        b.iter(|| enumerate_maximal_cliques(black_box(&g), DEFAULT_CLIQUE_CAP).unwrap())
    });
    group.finish();
}

fn dense_subgraph(c: &mut Criterion) {
    let n = 256;
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| [(v, (v + 1) % n), (v, (v * 7 + 3) % n)])
        .collect();
    let g = Multigraph::new(n, edges).unwrap();
    c.bench_function("dense subgraph n=256", |b| {
        b.iter(|| find_dense_subgraph(black_box(&g), 2).unwrap())
    });
}

criterion_group!(
    benches,
    exact,
    unweighted_local,
    weighted_local,
    relaxations,
    dense_subgraph
);
criterion_main!(benches);
