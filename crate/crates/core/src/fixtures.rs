//! Small named instances shared by tests, benches and the CLI.

use crate::instance::{gen_projective_plane, GraphSpec};
use crate::{int, ConflictGraph, Instance};

/// The Fano plane: 7 elements, 7 triples, any two of which meet once.
pub fn fano_plane() -> Instance {
    gen_projective_plane(2).expect("2 is prime")
}

/// `n` pairwise disjoint `k`-element sets.
pub fn disjoint_sets(n: usize, k: usize) -> Instance {
    let sets = (0..n).map(|i| (i * k..(i + 1) * k).collect()).collect();
    Instance::new(n * k, k, sets, None).expect("disjoint sets are valid")
}

/// Vertex ids of the five-against-two weighted example.
///
/// Five independent vertices of weight 10 (`s1..s5`) and two vertices of
/// weight 18 (`t1` adjacent to `s1, s2, s3`; `t2` adjacent to `s3, s4, s5`).
/// `s3` gets the lowest id so that the lowest-id tie rule makes it the
/// heaviest solution-neighbour of both `t1` and `t2`.
pub mod five_two {
    pub const S3: usize = 0;
    pub const S1: usize = 1;
    pub const S2: usize = 2;
    pub const S4: usize = 3;
    pub const S5: usize = 4;
    pub const T1: usize = 5;
    pub const T2: usize = 6;

    pub const S: [usize; 5] = [S1, S2, S3, S4, S5];
    pub const T: [usize; 2] = [T1, T2];
    pub const LABELS: [&str; 7] = ["s3", "s1", "s2", "s4", "s5", "t1", "t2"];
}

/// The five-against-two example as a graph file description plus labels.
pub fn five_two_graph_spec() -> (GraphSpec, [&'static str; 7]) {
    use five_two::*;
    let edges = vec![(S1, T1), (S2, T1), (S3, T1), (S3, T2), (S4, T2), (S5, T2)];
    let weights = (0..7)
        .map(|v| if v >= T1 { int(18) } else { int(10) })
        .collect();
    (
        GraphSpec {
            vertex_count: 7,
            edges,
            weights: Some(weights),
        },
        LABELS,
    )
}

pub fn five_two_graph() -> ConflictGraph {
    let (spec, _) = five_two_graph_spec();
    ConflictGraph::from_edges(spec.vertex_count, &spec.edges, spec.weights.unwrap())
        .expect("fixture graph is valid")
}

/// Instance encoding of a triangle: three sets, pairwise sharing a private
/// element, so every pair conflicts but no element lies in all three.
pub fn triangle_encoding() -> Instance {
    Instance::from_graph(3, &[(0, 1), (1, 2), (0, 2)], None).expect("triangle encoding is valid")
}
