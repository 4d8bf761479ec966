//! Reference values checked against independent computations.

mod common;

use kspack::fixtures;
use kspack::instance::{gen_projective_plane, Instance};
use kspack::relaxation::{build_standard_lp, export_theta3_sdp, parse_sdpa, solve_lp};
use kspack::{int, ratio, ConflictGraph, Rational};

/// Uniform primal `1/k` and uniform dual `1/k` on a `k`-regular `k`-uniform
/// family certify the standard LP optimum `n/k` without the solver.
fn uniform_certificate(inst: &Instance) -> Rational {
    let k = inst.k() as i64;
    let mut degree = vec![0i64; inst.universe_size()];
    for s in inst.sets() {
        for &e in s {
            degree[e] += 1;
        }
    }
    assert!(degree.iter().all(|&d| d == k));
    let primal = ratio(inst.num_sets() as i64, k);
    let dual = ratio(inst.universe_size() as i64, k);
    assert_eq!(primal, dual);
    primal
}

#[test]
fn plane_lp_values_match_uniform_certificates() {
    for q in [2, 3, 5] {
        let plane = gen_projective_plane(q).unwrap();
        let expected = uniform_certificate(&plane);
        assert_eq!(
            solve_lp(&build_standard_lp(&plane))
                .unwrap()
                .objective_value,
            expected
        );
        let k = (q + 1) as i64;
        assert_eq!(expected, int(k - 1) + ratio(1, k));
    }
}

#[test]
fn plane_lines_meet_once() {
    for q in [2u64, 3, 5, 7] {
        let plane = gen_projective_plane(q).unwrap();
        let n = (q * q + q + 1) as usize;
        assert_eq!(plane.num_sets(), n);
        for a in 0..n {
            for b in a + 1..n {
                let shared = plane
                    .set(a)
                    .iter()
                    .filter(|e| plane.set(b).contains(e))
                    .count();
                assert_eq!(shared, 1);
            }
        }
    }
}

#[test]
fn sdp_constraint_count_is_edges_plus_one() {
    let complete = ConflictGraph::from_instance(&fixtures::fano_plane());
    let edges = (0..7).flat_map(|u| (u + 1..7).map(move |v| (u, v))).count();
    assert_eq!(edges, 21);
    assert_eq!(
        parse_sdpa(&export_theta3_sdp(&complete))
            .unwrap()
            .constraint_count(),
        edges + 1
    );
    let disjoint = ConflictGraph::from_instance(&fixtures::disjoint_sets(5, 3));
    assert_eq!(
        parse_sdpa(&export_theta3_sdp(&disjoint))
            .unwrap()
            .constraint_count(),
        1
    );
}

#[test]
fn five_against_two_by_hand() {
    let g = fixtures::five_two_graph();
    // s-vertices weigh 10, t-vertices 18.
    let s_sq = 5 * 10 * 10;
    let t_sq = 2 * 18 * 18;
    assert_eq!(t_sq - s_sq, 148);
    assert_eq!(2 * 18 - 5 * 10, -14);
    assert_eq!(common::brute_force_mwis(&g), int(50));
}
