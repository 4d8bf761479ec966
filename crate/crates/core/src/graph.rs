//! Conflict graphs: one vertex per set, an edge for every intersecting pair.

use num_traits::One;

use crate::bitset::BitSet;
use crate::{Error, Instance, Rational, Result};

/// Largest neighbourhood accepted by [`ConflictGraph::max_independent_in_neighborhood`].
pub const NEIGHBORHOOD_CAP: usize = 25;

/// Simple undirected vertex-weighted graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    adjacency: Vec<Vec<usize>>,
    adj_bits: Vec<BitSet>,
    weights: Vec<Rational>,
}

impl ConflictGraph {
    /// Conflict graph of an instance; weights are copied (unit weights when
    /// the instance is unweighted).
    pub fn from_instance(instance: &Instance) -> Self {
        let n = instance.num_sets();
        let mut by_element = vec![Vec::new(); instance.universe_size()];
        for (i, s) in instance.sets().iter().enumerate() {
            for &e in s {
                by_element[e].push(i);
            }
        }
        let mut adj_bits = vec![BitSet::new(n); n];
        for holders in &by_element {
            for (pos, &a) in holders.iter().enumerate() {
                for &b in &holders[pos + 1..] {
                    adj_bits[a].insert(b);
                    adj_bits[b].insert(a);
                }
            }
        }
        let adjacency = adj_bits.iter().map(BitSet::to_vec).collect();
        ConflictGraph {
            adjacency,
            adj_bits,
            weights: instance.weight_vec(),
        }
    }

    /// Graph from an edge list. Parallel edges collapse; loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != n {
            return Err(Error::Precondition(format!(
                "{} weights for {n} vertices",
                weights.len()
            )));
        }
        let mut adj_bits = vec![BitSet::new(n); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, size: n });
                }
            }
            if u == v {
                return Err(Error::Precondition(format!("loop at vertex {u}")));
            }
            adj_bits[u].insert(v);
            adj_bits[v].insert(u);
        }
        let adjacency = adj_bits.iter().map(BitSet::to_vec).collect();
        Ok(ConflictGraph {
            adjacency,
            adj_bits,
            weights,
        })
    }

    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges(n, edges, vec![Rational::one(); n])
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Sorted neighbour list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn neighbor_bits(&self, v: usize) -> &BitSet {
        &self.adj_bits[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj_bits[u].contains(v)
    }

    pub fn weight(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Same graph with different vertex weights.
    pub fn with_weights(&self, weights: Vec<Rational>) -> Self {
        assert_eq!(weights.len(), self.vertex_count());
        ConflictGraph {
            weights,
            ..self.clone()
        }
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && !self.is_adjacent(u, v))
        })
    }

    pub fn total_weight(&self, vertices: &[usize]) -> Rational {
        vertices.iter().map(|&v| self.weights[v].clone()).sum()
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> ConflictGraph {
        let index: std::collections::HashMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let m = vertices.len();
        let mut adj_bits = vec![BitSet::new(m); m];
        for (i, &v) in vertices.iter().enumerate() {
            for u in &self.adjacency[v] {
                if let Some(&j) = index.get(u) {
                    adj_bits[i].insert(j);
                }
            }
        }
        let adjacency = adj_bits.iter().map(BitSet::to_vec).collect();
        let weights = vertices.iter().map(|&v| self.weights[v].clone()).collect();
        ConflictGraph {
            adjacency,
            adj_bits,
            weights,
        }
    }

    /// Size of a maximum independent set inside the open neighbourhood of
    /// `v`. A graph is `(d+1)`-claw-free iff this is at most `d` for every
    /// vertex.
    pub fn max_independent_in_neighborhood(&self, v: usize) -> Result<usize> {
        if v >= self.vertex_count() {
            return Err(Error::IndexOutOfRange {
                index: v,
                size: self.vertex_count(),
            });
        }
        let nbrs = self.neighbors(v);
        if nbrs.len() > NEIGHBORHOOD_CAP {
            return Err(Error::CapExceeded {
                what: "neighbourhood",
                size: nbrs.len(),
                cap: NEIGHBORHOOD_CAP,
            });
        }
        let sub = self
            .induced(nbrs)
            .with_weights(vec![Rational::one(); nbrs.len()]);
        Ok(crate::exact::max_independent_set_exact(&sub, NEIGHBORHOOD_CAP)?.len())
    }

    /// Whether the graph has no induced `K_{1,claw_size}`. Returns `None`
    /// when some neighbourhood is too large to check exhaustively.
    pub fn is_claw_free(&self, claw_size: usize) -> Option<bool> {
        let mut all = true;
        for v in 0..self.vertex_count() {
            match self.max_independent_in_neighborhood(v) {
                Ok(alpha) => all &= alpha < claw_size,
                Err(_) => return None,
            }
        }
        Some(all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::instance::gen_random;

    #[test]
    fn fano_conflict_graph_is_k7() {
        let g = ConflictGraph::from_instance(&fixtures::fano_plane());
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 21);
        for v in 0..7 {
            assert_eq!(g.degree(v), 6);
            assert_eq!(g.max_independent_in_neighborhood(v).unwrap(), 1);
        }
    }

    #[test]
    fn disjoint_sets_give_edgeless_graph() {
        let g = ConflictGraph::from_instance(&fixtures::disjoint_sets(6, 2));
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn random_adjacency_matches_pairwise_intersection() {
        let inst = gen_random(12, 8, 3, None, 1).unwrap();
        let g = ConflictGraph::from_instance(&inst);
        for a in 0..8 {
            for b in 0..8 {
                let brute = a != b && inst.set(a).iter().any(|e| inst.set(b).contains(e));
                assert_eq!(g.is_adjacent(a, b), brute, "pair ({a}, {b})");
            }
        }
    }

    #[test]
    fn star_and_independent_neighbourhoods() {
        let star = ConflictGraph::unweighted(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.max_independent_in_neighborhood(0).unwrap(), 4);
        assert_eq!(star.max_independent_in_neighborhood(1).unwrap(), 1);
        assert_eq!(star.is_claw_free(4), Some(false));
        assert_eq!(star.is_claw_free(5), Some(true));
    }

    #[test]
    fn oversized_neighbourhood_is_refused() {
        let edges: Vec<_> = (1..=26).map(|i| (0, i)).collect();
        let g = ConflictGraph::unweighted(27, &edges).unwrap();
        assert!(matches!(
            g.max_independent_in_neighborhood(0),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(g.is_claw_free(3), None);
    }

    #[test]
    fn loops_and_bad_endpoints_are_rejected() {
        assert!(ConflictGraph::unweighted(2, &[(0, 0)]).is_err());
        assert!(ConflictGraph::unweighted(2, &[(0, 2)]).is_err());
    }
}
