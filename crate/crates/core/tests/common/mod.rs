#![allow(dead_code)]

use kspack::instance::{gen_random, WeightRange};
use kspack::{int, ConflictGraph, Instance, Multigraph, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random k-set family with at most 20 sets over a universe small enough
/// to create conflicts.
pub fn random_instance(k: usize, seed: u64, weighted: bool) -> Instance {
    let mut r = rng(seed);
    let universe = r.random_range(2 * k..=3 * k + 2);
    let n = r.random_range(6..=20);
    let range = WeightRange::new(int(1), int(20)).unwrap();
    gen_random(universe, n, k, weighted.then_some(&range), seed).unwrap()
}

/// Brute-force maximum weight of an independent set.
pub fn brute_force_mwis(graph: &ConflictGraph) -> Rational {
    let n = graph.vertex_count();
    assert!(n <= 22, "brute force is limited to 22 vertices");
    let mut best = int(0);
    for mask in 0u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if graph.is_independent(&vs) {
            let w = graph.total_weight(&vs);
            if w > best {
                best = w;
            }
        }
    }
    best
}

/// Random multigraph (loops and parallel edges allowed) with minimum
/// degree at least 3.
pub fn random_min_deg3(n: usize, extra: usize, r: &mut ChaCha8Rng) -> Multigraph {
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    loop {
        let low: Vec<usize> = (0..n).filter(|&v| degree[v] < 3).collect();
        if low.is_empty() {
            break;
        }
        let u = low[r.random_range(0..low.len())];
        let v = r.random_range(0..n);
        degree[u] += 1;
        degree[v] += 1;
        edges.push((u, v));
    }
    for _ in 0..extra {
        edges.push((r.random_range(0..n), r.random_range(0..n)));
    }
    Multigraph::new(n, edges).unwrap()
}

/// Random multigraph with `h·|E| ≥ (h+1)·|V|`.
pub fn random_dense_for(n: usize, h: usize, r: &mut ChaCha8Rng) -> Multigraph {
    let m = ((h + 1) * n).div_ceil(h) + r.random_range(0..=n / 4);
    let edges = (0..m)
        .map(|_| (r.random_range(0..n), r.random_range(0..n)))
        .collect();
    Multigraph::new(n, edges).unwrap()
}
