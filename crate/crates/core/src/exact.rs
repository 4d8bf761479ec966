//! Exact maximum-weight packing by branch and bound on the conflict graph.
//!
//! These are ground-truth oracles: instances above the cap are refused
//! instead of being solved approximately.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::bitset::BitSet;
use crate::instance::Packing;
use crate::{ConflictGraph, Error, Instance, Rational, Result};

pub const DEFAULT_CAP: usize = 40;

/// Maximum-weight packing (maximum cardinality when unweighted) for
/// instances with at most [`DEFAULT_CAP`] sets.
pub fn max_packing_exact(instance: &Instance) -> Result<Packing> {
    max_packing_exact_capped(instance, DEFAULT_CAP)
}

pub fn max_packing_exact_capped(instance: &Instance, cap: usize) -> Result<Packing> {
    if instance.num_sets() > cap {
        return Err(Error::CapExceeded {
            what: "instance",
            size: instance.num_sets(),
            cap,
        });
    }
    let g = ConflictGraph::from_instance(instance);
    Ok(Packing::from_sorted_unchecked(max_independent_set_exact(
        &g, cap,
    )?))
}

/// Maximum-weight independent set, returned sorted. Among all optima the
/// lexicographically smallest member list is returned.
pub fn max_independent_set_exact(graph: &ConflictGraph, cap: usize) -> Result<Vec<usize>> {
    let n = graph.vertex_count();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "graph",
            size: n,
            cap,
        });
    }
    let solver = Solver::new(graph)?;
    let optimum = solver.value(&BitSet::full(n));

    // Fix vertices in increasing id order whenever an optimum survives.
    let mut chosen = Vec::new();
    let mut chosen_weight = 0i128;
    let mut allowed = BitSet::full(n);
    for v in 0..n {
        if !allowed.contains(v) {
            continue;
        }
        allowed.remove(v);
        let rest = allowed.difference(graph.neighbor_bits(v));
        let with_v = chosen_weight + solver.weights[v] + solver.value(&rest);
        if with_v == optimum {
            chosen.push(v);
            chosen_weight += solver.weights[v];
            allowed = rest;
        }
    }
    debug_assert_eq!(chosen_weight, optimum);
    Ok(chosen)
}

/// Branch and bound over integer-scaled weights.
struct Solver<'g> {
    graph: &'g ConflictGraph,
    weights: Vec<i128>,
}

impl<'g> Solver<'g> {
    fn new(graph: &'g ConflictGraph) -> Result<Self> {
        let lcm = graph
            .weights()
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let scale = Rational::from_integer(lcm);
        let too_large = || Error::Precondition("weights too large for the exact oracle".into());
        let weights = graph
            .weights()
            .iter()
            .map(|w| (w * &scale).to_integer().to_i128().ok_or_else(too_large))
            .collect::<Result<Vec<_>>>()?;
        weights
            .iter()
            .try_fold(0i128, |acc, &w| acc.checked_add(w))
            .ok_or_else(too_large)?;
        Ok(Solver { graph, weights })
    }

    fn value(&self, candidates: &BitSet) -> i128 {
        let mut best = 0;
        self.search(candidates.clone(), 0, &mut best);
        best
    }

    /// Upper bound from a greedy clique partition: each clique contributes
    /// at most its heaviest vertex.
    fn clique_cover_bound(&self, candidates: &BitSet) -> i128 {
        let mut order = candidates.to_vec();
        order.sort_by(|&a, &b| self.weights[b].cmp(&self.weights[a]).then(a.cmp(&b)));
        let mut cliques: Vec<Vec<usize>> = Vec::new();
        let mut bound = 0;
        for v in order {
            match cliques
                .iter_mut()
                .find(|c| c.iter().all(|&u| self.graph.is_adjacent(u, v)))
            {
                Some(c) => c.push(v),
                None => {
                    bound += self.weights[v];
                    cliques.push(vec![v]);
                }
            }
        }
        bound
    }

    fn search(&self, mut candidates: BitSet, mut current: i128, best: &mut i128) {
        // Vertices with no candidate neighbours are always taken.
        loop {
            let mut branch: Option<(usize, usize)> = None;
            let mut isolated = Vec::new();
            for v in candidates.iter() {
                let d = self.graph.neighbor_bits(v).intersection_count(&candidates);
                if d == 0 {
                    isolated.push(v);
                } else if branch.is_none_or(|(_, bd)| d > bd) {
                    branch = Some((v, d));
                }
            }
            for v in isolated {
                current += self.weights[v];
                candidates.remove(v);
            }
            if current > *best {
                *best = current;
            }
            let Some((v, _)) = branch else { return };
            if current + self.clique_cover_bound(&candidates) <= *best {
                return;
            }
            let include = candidates.difference(self.graph.neighbor_bits(v));
            let mut include = include;
            include.remove(v);
            self.search(include, current + self.weights[v], best);
            candidates.remove(v);
        }
    }
}
