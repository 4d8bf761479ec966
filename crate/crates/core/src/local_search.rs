//! Unweighted local search: improving sets, t-local optimality, and the
//! auxiliary-multigraph search for logarithmic-size improvements.

use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive, Zero};

use crate::bitset::BitSet;
use crate::instance::Packing;
use crate::multigraph::{self, Multigraph};
use crate::{Budget, Error, Instance, Rational, Result};

/// Sets to add (`incoming`) and the packing members they hit (`outgoing`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImprovingSet {
    pub incoming: Vec<usize>,
    pub outgoing: Vec<usize>,
}

/// Packing members hit by each set of the instance.
fn packing_neighbours(instance: &Instance, packing: &Packing) -> Vec<Vec<usize>> {
    let mut owner = vec![usize::MAX; instance.universe_size()];
    for &m in packing.members() {
        for &e in instance.set(m) {
            owner[e] = m;
        }
    }
    instance
        .sets()
        .iter()
        .map(|s| {
            let mut hit: Vec<usize> = s
                .iter()
                .map(|&e| owner[e])
                .filter(|&m| m != usize::MAX)
                .collect();
            hit.sort_unstable();
            hit.dedup();
            hit
        })
        .collect()
}

fn check_packing(instance: &Instance, packing: &Packing) -> Result<()> {
    if crate::instance::is_packing(instance, packing.members())? {
        Ok(())
    } else {
        Err(Error::InvalidPacking(
            "members are not pairwise disjoint".into(),
        ))
    }
}

/// Smallest improving set of at most `t` sets, first in lexicographic
/// order among those of that size, or `None` if the packing is t-locally
/// optimal.
pub fn find_improving_set(
    instance: &Instance,
    packing: &Packing,
    t: usize,
    budget: &mut Budget,
) -> Result<Option<ImprovingSet>> {
    if t == 0 {
        return Err(Error::Precondition("t must be at least 1".into()));
    }
    check_packing(instance, packing)?;
    let n = instance.num_sets();
    let hits = packing_neighbours(instance, packing);
    let position: std::collections::HashMap<usize, usize> = packing
        .members()
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    let out_bits: Vec<BitSet> = hits
        .iter()
        .map(|h| BitSet::from_iter(packing.len(), h.iter().map(|m| position[m])))
        .collect();
    let elem_bits: Vec<BitSet> = instance
        .sets()
        .iter()
        .map(|s| BitSet::from_iter(instance.universe_size(), s.iter().copied()))
        .collect();
    let outside: Vec<usize> = (0..n).filter(|&i| !packing.contains(i)).collect();

    struct Dfs<'a> {
        size: usize,
        candidates: Vec<usize>,
        out_bits: &'a [BitSet],
        elem_bits: &'a [BitSet],
        budget: &'a mut Budget,
        chosen: Vec<usize>,
    }

    impl Dfs<'_> {
        fn run(&mut self, from: usize, elems: &BitSet, out: &BitSet) -> Result<bool> {
            if self.chosen.len() == self.size {
                return Ok(out.count() < self.size);
            }
            for idx in from..self.candidates.len() {
                let c = self.candidates[idx];
                self.budget.tick(1)?;
                if !elems.is_disjoint(&self.elem_bits[c]) {
                    continue;
                }
                let mut next_out = out.clone();
                next_out.union_with(&self.out_bits[c]);
                // outgoing only grows, and must stay below the final size
                if next_out.count() >= self.size {
                    continue;
                }
                let mut next_elems = elems.clone();
                next_elems.union_with(&self.elem_bits[c]);
                self.chosen.push(c);
                if self.run(idx + 1, &next_elems, &next_out)? {
                    return Ok(true);
                }
                self.chosen.pop();
            }
            Ok(false)
        }
    }

    for size in 1..=t.min(outside.len()) {
        let candidates: Vec<usize> = outside
            .iter()
            .copied()
            .filter(|&c| hits[c].len() < size)
            .collect();
        let mut dfs = Dfs {
            size,
            candidates,
            out_bits: &out_bits,
            elem_bits: &elem_bits,
            budget: &mut *budget,
            chosen: Vec::new(),
        };
        let empty_elems = BitSet::new(instance.universe_size());
        let empty_out = BitSet::new(packing.len());
        if dfs.run(0, &empty_elems, &empty_out)? {
            let incoming = dfs.chosen;
            let mut outgoing: Vec<usize> = incoming
                .iter()
                .flat_map(|&c| hits[c].iter().copied())
                .collect();
            outgoing.sort_unstable();
            outgoing.dedup();
            return Ok(Some(ImprovingSet { incoming, outgoing }));
        }
    }
    Ok(None)
}

/// Checks `imp` against `packing` and returns the improved packing.
pub fn apply_improving_set(
    instance: &Instance,
    packing: &Packing,
    imp: &ImprovingSet,
) -> Result<Packing> {
    check_packing(instance, packing)?;
    let stale = |msg: &str| Err(Error::StaleImprovement(msg.to_string()));
    let n = instance.num_sets();
    if let Some(&bad) = imp.incoming.iter().chain(&imp.outgoing).find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: n,
        });
    }
    if imp.incoming.iter().any(|&i| packing.contains(i)) {
        return stale("incoming set already in the packing");
    }
    if !crate::instance::is_packing(instance, &imp.incoming)? {
        return stale("incoming sets intersect");
    }
    let hits = packing_neighbours(instance, packing);
    let mut expected: Vec<usize> = imp
        .incoming
        .iter()
        .flat_map(|&c| hits[c].iter().copied())
        .collect();
    expected.sort_unstable();
    expected.dedup();
    let mut outgoing = imp.outgoing.clone();
    outgoing.sort_unstable();
    if outgoing != expected {
        return stale("outgoing sets differ from the packing members hit by the incoming sets");
    }
    if imp.incoming.len() <= outgoing.len() {
        return stale("swap does not increase the cardinality");
    }
    let mut members: Vec<usize> = packing
        .members()
        .iter()
        .copied()
        .filter(|m| outgoing.binary_search(m).is_err())
        .chain(imp.incoming.iter().copied())
        .collect();
    members.sort_unstable();
    Packing::new(instance, members)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub packing: Packing,
    pub iterations: usize,
}

/// Repeatedly applies improving sets of size at most `t`, starting from the
/// empty packing. The result is t-locally optimal.
pub fn t_local_search(instance: &Instance, t: usize, budget: &mut Budget) -> Result<SearchOutcome> {
    improve_from(instance, Packing::empty(), t, budget)
}

/// Same as [`t_local_search`] from a given starting packing.
pub fn improve_from(
    instance: &Instance,
    start: Packing,
    t: usize,
    budget: &mut Budget,
) -> Result<SearchOutcome> {
    let mut packing = start;
    let mut iterations = 0;
    while let Some(imp) = find_improving_set(instance, &packing, t, budget)? {
        packing = apply_improving_set(instance, &packing, &imp)?;
        iterations += 1;
    }
    Ok(SearchOutcome {
        packing,
        iterations,
    })
}

/// Upper bound on |optimum| / |t-locally optimal packing| for k-set packing:
/// with `r = ⌈t/2⌉`, `(k(k−1)^r − k) / (2(k−1)^r − k)` for odd `t` and
/// `(k(k−1)^r − 2) / (2(k−1)^r − 2)` for even `t`.
pub fn hs_bound(k: u32, t: u32) -> Result<Rational> {
    if k < 3 || t < 2 {
        return Err(Error::Precondition(format!(
            "bound needs k ≥ 3 and t ≥ 2, got k = {k}, t = {t}"
        )));
    }
    let r = t.div_ceil(2);
    let k_big = BigInt::from(k);
    let p = Pow::pow(BigInt::from(k - 1), r);
    let c = if t % 2 == 1 {
        k_big.clone()
    } else {
        BigInt::from(2)
    };
    Ok(Rational::new(&k_big * &p - &c, BigInt::from(2) * &p - &c))
}

/// Local search whose improvement step is [`log_improvement_search`].
/// Improving sets of size at most 2 are applied first: the auxiliary
/// multigraph only sees sets that hit exactly two members.
pub fn log_local_search(
    instance: &Instance,
    epsilon: &Rational,
    budget: &mut Budget,
) -> Result<SearchOutcome> {
    let mut packing = Packing::empty();
    let mut iterations = 0;
    loop {
        let step = match find_improving_set(instance, &packing, 2, budget)? {
            Some(imp) => Some(imp),
            None => log_improvement_search(instance, &packing, epsilon, budget)?.improvement,
        };
        let Some(imp) = step else {
            return Ok(SearchOutcome {
                packing,
                iterations,
            });
        };
        packing = apply_improving_set(instance, &packing, &imp)?;
        iterations += 1;
    }
}

/// Auxiliary multigraph on the packing members: one edge per outside set
/// hitting exactly two members and, optionally, one loop per outside set
/// hitting exactly one.
#[derive(Debug, Clone)]
pub struct AuxiliaryGraph {
    pub multigraph: Multigraph,
    /// Vertex `i` is packing member `members[i]`.
    pub members: Vec<usize>,
    /// Edge `e` was produced by set `edge_sets[e]`.
    pub edge_sets: Vec<usize>,
}

pub fn build_auxiliary_multigraph(
    instance: &Instance,
    packing: &Packing,
    include_loops: bool,
) -> Result<AuxiliaryGraph> {
    check_packing(instance, packing)?;
    let hits = packing_neighbours(instance, packing);
    let position: std::collections::HashMap<usize, usize> = packing
        .members()
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    let mut edges = Vec::new();
    let mut edge_sets = Vec::new();
    for (set, hit) in hits.iter().enumerate() {
        if packing.contains(set) {
            continue;
        }
        match hit.as_slice() {
            [a, b] => edges.push((position[a], position[b])),
            [a] if include_loops => edges.push((position[a], position[a])),
            _ => continue,
        }
        edge_sets.push(set);
    }
    Ok(AuxiliaryGraph {
        multigraph: Multigraph::new(packing.len(), edges)?,
        members: packing.members().to_vec(),
        edge_sets,
    })
}

/// Outcome of [`log_improvement_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogSearchOutcome {
    pub improvement: Option<ImprovingSet>,
    /// Dense auxiliary subgraphs examined.
    pub candidates: usize,
    /// Candidates whose sets did not form a valid improving set.
    pub rejected: usize,
}

/// `⌊4(1 + 1/ε)·log₂ n⌋`.
pub fn log_search_size_bound(n: usize, epsilon: &Rational) -> Result<usize> {
    if *epsilon <= Rational::zero() {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    let eps = epsilon.to_f64().unwrap_or(f64::MAX);
    Ok((4.0 * (1.0 + 1.0 / eps) * (n.max(1) as f64).log2()).floor() as usize)
}

/// Looks for an improving set among the sets behind a dense subgraph of the
/// auxiliary multigraph. A dense subgraph need not yield an improving set
/// (its sets may intersect each other), so every candidate is validated
/// and the search moves on when validation fails.
pub fn log_improvement_search(
    instance: &Instance,
    packing: &Packing,
    epsilon: &Rational,
    budget: &mut Budget,
) -> Result<LogSearchOutcome> {
    let bound = log_search_size_bound(instance.num_sets(), epsilon)?;
    let aux = build_auxiliary_multigraph(instance, packing, false)?;
    let mut outcome = LogSearchOutcome {
        improvement: None,
        candidates: 0,
        rejected: 0,
    };

    let try_candidate = |vertices: &[usize], outcome: &mut LogSearchOutcome| -> bool {
        outcome.candidates += 1;
        match improving_set_from_dense(instance, packing, &aux, vertices) {
            Some(imp) => {
                outcome.improvement = Some(imp);
                true
            }
            None => {
                outcome.rejected += 1;
                false
            }
        }
    };

    // Constructive route first, when the density precondition holds.
    let eps_f = epsilon.to_f64().unwrap_or(f64::MAX);
    let h = (1.0 / eps_f).ceil().max(1.0) as usize;
    let g = &aux.multigraph;
    if g.vertex_count() > 0 && h * g.edge_count() >= (h + 1) * g.vertex_count() {
        let x = multigraph::find_dense_subgraph(g, h)?;
        if x.len() <= bound && try_candidate(&x, &mut outcome) {
            return Ok(outcome);
        }
    }
    multigraph::search_dense_connected(g, bound.min(g.vertex_count()), budget, |x| {
        try_candidate(x, &mut outcome)
    })?;
    Ok(outcome)
}

/// Sets behind the edges induced by `vertices`, accepted if they are
/// pairwise disjoint and outnumber the members they hit; otherwise the
/// greedy disjoint subfamily (ascending set id) is tried.
fn improving_set_from_dense(
    instance: &Instance,
    packing: &Packing,
    aux: &AuxiliaryGraph,
    vertices: &[usize],
) -> Option<ImprovingSet> {
    let mut inside = vec![false; aux.multigraph.vertex_count()];
    for &v in vertices {
        inside[v] = true;
    }
    let mut sets: Vec<usize> = aux
        .multigraph
        .edges()
        .iter()
        .zip(&aux.edge_sets)
        .filter(|((a, b), _)| inside[*a] && inside[*b])
        .map(|(_, &s)| s)
        .collect();
    sets.sort_unstable();

    let as_improvement = |incoming: Vec<usize>| -> Option<ImprovingSet> {
        let hits = packing_neighbours(instance, packing);
        let mut outgoing: Vec<usize> = incoming
            .iter()
            .flat_map(|&c| hits[c].iter().copied())
            .collect();
        outgoing.sort_unstable();
        outgoing.dedup();
        (incoming.len() > outgoing.len()).then_some(ImprovingSet { incoming, outgoing })
    };

    if crate::instance::is_packing(instance, &sets).ok()? {
        return as_improvement(sets);
    }
    let mut disjoint: Vec<usize> = Vec::new();
    for s in sets {
        if disjoint.iter().all(|&d| !instance.intersects(d, s)) {
            disjoint.push(s);
        }
    }
    as_improvement(disjoint)
}
