//! Weighted local search on vertex-weighted claw-free graphs.
//!
//! A claw is a center vertex with an independent set of neighbours (its
//! talons), or a single vertex with no center. Swapping a claw into an
//! independent set `A` adds the talons and removes their neighbours in `A`.
//!
//! `charge(u, v) = w(u) − ½·w(N(u) ∩ A)` when `v` is the heaviest
//! `A`-neighbour of `u` (lowest id on ties) and 0 otherwise. A claw is
//! good if its talons have no `A`-neighbours, or if its center lies in `A`
//! and receives more than half its weight in charge from the talons; a
//! nice claw is a minimal good claw. Every nice claw strictly increases
//! `Σ_{v∈A} w(v)²`, so [`wishful_thinking`] terminates.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bitset::BitSet;
use crate::{Budget, ConflictGraph, Error, Rational, Result};

/// Center (absent for a 1-claw) plus talons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claw {
    pub center: Option<usize>,
    pub talons: Vec<usize>,
}

/// Result of a weighted search: the final independent set (sorted) and the
/// number of improvement steps taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedOutcome {
    pub set: Vec<usize>,
    pub iterations: usize,
}

fn check_vertices(graph: &ConflictGraph, vs: &[usize]) -> Result<()> {
    let n = graph.vertex_count();
    match vs.iter().find(|&&v| v >= n) {
        Some(&v) => Err(Error::IndexOutOfRange { index: v, size: n }),
        None => Ok(()),
    }
}

fn independent_bits(graph: &ConflictGraph, a: &[usize]) -> Result<BitSet> {
    check_vertices(graph, a)?;
    if !graph.is_independent(a) {
        return Err(Error::Precondition(
            "solution set is not independent".into(),
        ));
    }
    Ok(BitSet::from_iter(graph.vertex_count(), a.iter().copied()))
}

/// `n(u, A)`: the heaviest neighbour of `u` in `A`, lowest id on ties.
pub fn heaviest_solution_neighbour(graph: &ConflictGraph, a: &BitSet, u: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for &x in graph.neighbors(u) {
        if a.contains(x) && best.is_none_or(|b| graph.weight(x) > graph.weight(b)) {
            best = Some(x);
        }
    }
    best
}

/// `w(N(u) ∩ A)`.
fn solution_neighbour_weight(graph: &ConflictGraph, a: &BitSet, u: usize) -> Rational {
    graph
        .neighbors(u)
        .iter()
        .filter(|&&x| a.contains(x))
        .map(|&x| graph.weight(x).clone())
        .sum()
}

fn charge_bits(graph: &ConflictGraph, a: &BitSet, u: usize, v: usize) -> Rational {
    if heaviest_solution_neighbour(graph, a, u) == Some(v) {
        graph.weight(u) - solution_neighbour_weight(graph, a, u) / Rational::from_integer(2.into())
    } else {
        Rational::zero()
    }
}

pub fn charge(graph: &ConflictGraph, a: &[usize], u: usize, v: usize) -> Result<Rational> {
    check_vertices(graph, &[u, v])?;
    let bits = independent_bits(graph, a)?;
    if bits.contains(u) {
        return Err(Error::Precondition(format!(
            "vertex {u} is in the solution"
        )));
    }
    if !bits.contains(v) {
        return Err(Error::Precondition(format!(
            "vertex {v} is not in the solution"
        )));
    }
    Ok(charge_bits(graph, &bits, u, v))
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// `N(T, A)`, sorted.
pub fn solution_neighbours(graph: &ConflictGraph, a: &BitSet, talons: &[usize]) -> Vec<usize> {
    let mut hit = BitSet::new(graph.vertex_count());
    for &t in talons {
        hit.union_with(graph.neighbor_bits(t));
    }
    hit.intersect_with(a);
    hit.to_vec()
}

/// Finds a nice claw, or `None` when `A` admits no good claw.
///
/// 1-claws are tried first (lowest id), then centers of `A` in ascending
/// id. For a center `v` the talon candidates are the non-solution
/// neighbours sending positive charge to `v`; talons are accumulated in
/// decreasing charge while they stay independent. If that greedy pass does
/// not exceed `½·w(v)`, a maximum-charge independent subset of the
/// candidates is computed exactly. The claw is then made minimal by
/// dropping talons in ascending charge order.
pub fn find_nice_claw(graph: &ConflictGraph, a: &[usize]) -> Result<Option<Claw>> {
    let bits = independent_bits(graph, a)?;
    Ok(find_nice_claw_bits(graph, &bits))
}

/// Candidate lists above this size skip the exact fallback.
const EXACT_TALON_CAP: usize = 40;

fn find_nice_claw_bits(graph: &ConflictGraph, a: &BitSet) -> Option<Claw> {
    let n = graph.vertex_count();
    if let Some(u) = (0..n).find(|&u| !a.contains(u) && graph.neighbor_bits(u).is_disjoint(a)) {
        return Some(Claw {
            center: None,
            talons: vec![u],
        });
    }
    let two = Rational::from_integer(2.into());
    for v in a.iter() {
        let half = graph.weight(v) / &two;
        let mut cands: Vec<(usize, Rational)> = graph
            .neighbors(v)
            .iter()
            .filter(|&&u| !a.contains(u))
            .map(|&u| (u, charge_bits(graph, a, u, v)))
            .filter(|(_, c)| c.is_positive())
            .collect();
        if cands.is_empty() {
            continue;
        }
        cands.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));

        let mut talons: Vec<(usize, Rational)> = Vec::new();
        let mut total = Rational::zero();
        for (u, c) in &cands {
            if talons.iter().all(|(t, _)| !graph.is_adjacent(*t, *u)) {
                total += c;
                talons.push((*u, c.clone()));
                if total > half {
                    break;
                }
            }
        }
        if total <= half && cands.len() <= EXACT_TALON_CAP {
            let ids: Vec<usize> = cands.iter().map(|(u, _)| *u).collect();
            let sub = graph
                .induced(&ids)
                .with_weights(cands.iter().map(|(_, c)| c.clone()).collect());
            let best = crate::exact::max_independent_set_exact(&sub, EXACT_TALON_CAP)
                .expect("candidate list is within the cap");
            talons = best.into_iter().map(|i| cands[i].clone()).collect();
            total = talons.iter().map(|(_, c)| c.clone()).sum();
        }
        if total <= half {
            continue;
        }

        talons.sort_by(|x, y| x.1.cmp(&y.1).then(y.0.cmp(&x.0)));
        let mut kept = Vec::new();
        for (u, c) in talons {
            if &total - &c > half {
                total -= c;
            } else {
                kept.push(u);
            }
        }
        return Some(Claw {
            center: Some(v),
            talons: sorted(kept),
        });
    }
    None
}

/// `A ∪ T \ N(T, A)`.
pub fn apply_claw(graph: &ConflictGraph, a: &[usize], claw: &Claw) -> Result<Vec<usize>> {
    let bits = independent_bits(graph, a)?;
    check_vertices(graph, &claw.talons)?;
    if claw.talons.is_empty() {
        return Err(Error::Precondition("claw has no talons".into()));
    }
    if !graph.is_independent(&claw.talons) {
        return Err(Error::Precondition("talons are not independent".into()));
    }
    if claw.talons.iter().any(|&t| bits.contains(t)) {
        return Err(Error::Precondition(
            "a talon is already in the solution".into(),
        ));
    }
    if let Some(z) = claw.center {
        check_vertices(graph, &[z])?;
        if claw.talons.iter().any(|&t| !graph.is_adjacent(z, t)) {
            return Err(Error::Precondition(
                "center is not adjacent to every talon".into(),
            ));
        }
    }
    Ok(swap_in(graph, &bits, &claw.talons).to_vec())
}

fn swap_in(graph: &ConflictGraph, a: &BitSet, talons: &[usize]) -> BitSet {
    let mut next = a.clone();
    for &t in talons {
        next.difference_with(graph.neighbor_bits(t));
    }
    for &t in talons {
        next.insert(t);
    }
    next
}

/// `Σ_{v∈set} w(v)²`.
pub fn squared_weight(graph: &ConflictGraph, set: &[usize]) -> Rational {
    set.iter().map(|&v| graph.weight(v) * graph.weight(v)).sum()
}

/// Whether swapping `talons` into `A` strictly increases `Σ w²`.
pub fn improves_squared_weight(
    graph: &ConflictGraph,
    a: &[usize],
    talons: &[usize],
) -> Result<bool> {
    let bits = independent_bits(graph, a)?;
    let out = solution_neighbours(graph, &bits, talons);
    Ok(squared_weight(graph, talons) > squared_weight(graph, &out))
}

/// Checks claw-freeness where it can be checked exhaustively.
fn check_claw_free(graph: &ConflictGraph, claw_bound: usize) -> Result<()> {
    match graph.is_claw_free(claw_bound) {
        Some(false) => Err(Error::Precondition(format!(
            "graph contains an induced {claw_bound}-claw"
        ))),
        _ => Ok(()),
    }
}

fn nice_claw_loop(
    graph: &ConflictGraph,
    start: BitSet,
    cap: Option<usize>,
) -> (BitSet, usize, bool) {
    let mut a = start;
    let mut iterations = 0;
    while let Some(claw) = find_nice_claw_bits(graph, &a) {
        if cap.is_some_and(|c| iterations >= c) {
            return (a, iterations, true);
        }
        let next = swap_in(graph, &a, &claw.talons);
        debug_assert!(squared_weight(graph, &next.to_vec()) > squared_weight(graph, &a.to_vec()));
        a = next;
        iterations += 1;
    }
    (a, iterations, false)
}

/// Applies nice claws, starting from the empty set, until none is left.
/// On a `claw_bound`-claw-free graph the result is within a factor
/// `claw_bound / 2` of any independent set.
pub fn wishful_thinking(graph: &ConflictGraph, claw_bound: usize) -> Result<WeightedOutcome> {
    check_claw_free(graph, claw_bound)?;
    let (a, iterations, _) = nice_claw_loop(graph, BitSet::new(graph.vertex_count()), None);
    Ok(WeightedOutcome {
        set: a.to_vec(),
        iterations,
    })
}

/// Maximal independent set chosen by decreasing weight, lowest id first
/// on ties.
pub fn greedy_weighted(graph: &ConflictGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..graph.vertex_count()).collect();
    order.sort_by(|&x, &y| graph.weight(y).cmp(graph.weight(x)).then(x.cmp(&y)));
    let mut blocked = BitSet::new(graph.vertex_count());
    let mut chosen = Vec::new();
    for v in order {
        if !blocked.contains(v) {
            chosen.push(v);
            blocked.insert(v);
            blocked.union_with(graph.neighbor_bits(v));
        }
    }
    sorted(chosen)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareImpConfig {
    /// Largest talon set tried per center.
    pub max_talons: usize,
}

/// Applies claws whose talons increase `Σ_{v∈A} w(v)²` until none is left.
///
/// 1-claws come first, then centers of `A` in ascending id with talon sets
/// in ascending size and lexicographic order; the first improving claw is
/// applied.
pub fn square_imp(
    graph: &ConflictGraph,
    config: SquareImpConfig,
    budget: &mut Budget,
) -> Result<WeightedOutcome> {
    square_imp_from(graph, &[], config, budget)
}

pub fn square_imp_from(
    graph: &ConflictGraph,
    start: &[usize],
    config: SquareImpConfig,
    budget: &mut Budget,
) -> Result<WeightedOutcome> {
    let mut a = independent_bits(graph, start)?;
    let mut iterations = 0;
    while let Some(talons) = find_square_improving_claw(graph, &a, config.max_talons, budget)? {
        a = swap_in(graph, &a, &talons);
        iterations += 1;
    }
    Ok(WeightedOutcome {
        set: a.to_vec(),
        iterations,
    })
}

fn find_square_improving_claw(
    graph: &ConflictGraph,
    a: &BitSet,
    max_talons: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    let n = graph.vertex_count();
    for u in 0..n {
        budget.tick(1)?;
        if !a.contains(u) && graph.neighbor_bits(u).is_disjoint(a) {
            return Ok(Some(vec![u]));
        }
    }
    for v in a.iter() {
        let cands: Vec<usize> = graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| !a.contains(u))
            .collect();
        for size in 1..=max_talons.min(cands.len()) {
            let found = first_subset(graph, &cands, size, budget, &mut |talons| {
                let out = solution_neighbours(graph, a, talons);
                squared_weight(graph, talons) > squared_weight(graph, &out)
            })?;
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

/// First independent `size`-subset of `cands` (lexicographic order) that
/// satisfies `accept`.
fn first_subset(
    graph: &ConflictGraph,
    cands: &[usize],
    size: usize,
    budget: &mut Budget,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<Option<Vec<usize>>> {
    fn rec(
        graph: &ConflictGraph,
        cands: &[usize],
        from: usize,
        size: usize,
        chosen: &mut Vec<usize>,
        budget: &mut Budget,
        accept: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool> {
        if chosen.len() == size {
            budget.tick(1)?;
            return Ok(accept(chosen));
        }
        for i in from..cands.len() {
            let c = cands[i];
            if chosen.iter().any(|&x| graph.is_adjacent(x, c)) {
                continue;
            }
            chosen.push(c);
            if rec(graph, cands, i + 1, size, chosen, budget, accept)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
    let mut chosen = Vec::with_capacity(size);
    Ok(rec(graph, cands, 0, size, &mut chosen, budget, accept)?.then_some(chosen))
}

/// Outcome of [`rescaled_run`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RescaledOutcome {
    pub set: Vec<usize>,
    pub iterations: usize,
    /// `k²·n`.
    pub iteration_cap: usize,
    /// Factor `k·n / w(greedy)` applied before flooring.
    pub scale: Rational,
    /// Weight of the greedy start under the scaled weights, `k·n`.
    pub scaled_start_weight: Rational,
    /// Floored weights used by the nice-claw loop.
    pub floored_weights: Vec<Rational>,
    /// Whether the loop stopped at the iteration cap.
    pub capped: bool,
}

/// Greedy start, rescale so the start weighs `k·n`, then the nice-claw loop
/// under the floored weights, stopped after at most `k²·n` iterations.
/// `k` is the set size; the graph must be `(k+1)`-claw-free.
pub fn rescaled_run(graph: &ConflictGraph, k: usize) -> Result<RescaledOutcome> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    check_claw_free(graph, k + 1)?;
    let n = graph.vertex_count();
    let start = greedy_weighted(graph);
    if start.is_empty() {
        return Ok(RescaledOutcome {
            set: start,
            iterations: 0,
            iteration_cap: 0,
            scale: Rational::one(),
            scaled_start_weight: Rational::zero(),
            floored_weights: Vec::new(),
            capped: false,
        });
    }
    let target = Rational::from_integer(BigInt::from(k * n));
    let scale = &target / graph.total_weight(&start);
    let scaled: Vec<Rational> = graph.weights().iter().map(|w| w * &scale).collect();
    let scaled_start_weight = start.iter().map(|&v| scaled[v].clone()).sum();
    let floored: Vec<Rational> = scaled.iter().map(Rational::floor).collect();
    let floored_graph = graph.with_weights(floored.clone());
    let cap = k * k * n;
    let bits = BitSet::from_iter(n, start.iter().copied());
    let (a, iterations, capped) = nice_claw_loop(&floored_graph, bits, Some(cap));
    Ok(RescaledOutcome {
        set: a.to_vec(),
        iterations,
        iteration_cap: cap,
        scale,
        scaled_start_weight,
        floored_weights: floored,
        capped,
    })
}

/// Relative margin a floating-point gain must exceed for non-integer
/// exponents.
pub const POWER_MARGIN: f64 = 1e-9;

/// `w^alpha`, exact for integral exponents.
#[derive(Debug, Clone)]
enum PowerWeights {
    Exact(Vec<Rational>),
    Approx(Vec<f64>),
}

impl PowerWeights {
    fn new(graph: &ConflictGraph, alpha: &Rational) -> Self {
        if alpha.is_integer() {
            let e = alpha
                .to_integer()
                .to_u32()
                .expect("integral exponent fits in u32");
            PowerWeights::Exact(graph.weights().iter().map(|w| pow(w, e)).collect())
        } else {
            let a = alpha.to_f64().expect("finite exponent");
            PowerWeights::Approx(
                graph
                    .weights()
                    .iter()
                    .map(|w| w.to_f64().expect("finite weight").powf(a))
                    .collect(),
            )
        }
    }

    /// Whether adding `incoming` and removing `outgoing` strictly increases
    /// the total.
    fn improves(&self, incoming: &[usize], outgoing: &[usize]) -> bool {
        match self {
            PowerWeights::Exact(p) => {
                let gain: Rational = incoming.iter().map(|&v| p[v].clone()).sum::<Rational>()
                    - outgoing.iter().map(|&v| p[v].clone()).sum::<Rational>();
                gain.is_positive()
            }
            PowerWeights::Approx(p) => {
                let plus: f64 = incoming.iter().map(|&v| p[v]).sum();
                let minus: f64 = outgoing.iter().map(|&v| p[v]).sum();
                plus - minus > POWER_MARGIN * plus.max(minus).max(1.0)
            }
        }
    }
}

fn pow(w: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * w)
}

/// Gain in `Σ w^alpha` from swapping `incoming` into `a`, as a float (for
/// reporting; decisions use exact arithmetic when `alpha` is integral).
pub fn power_swap_gain(
    graph: &ConflictGraph,
    a: &[usize],
    incoming: &[usize],
    alpha: &Rational,
) -> Result<f64> {
    let bits = independent_bits(graph, a)?;
    let out = solution_neighbours(graph, &bits, incoming);
    let e = alpha.to_f64().unwrap_or(f64::NAN);
    let f = |v: &usize| graph.weight(*v).to_f64().unwrap_or(f64::NAN).powf(e);
    Ok(incoming.iter().map(f).sum::<f64>() - out.iter().map(f).sum::<f64>())
}

/// Local search under the weights `w^alpha`: from the greedy solution,
/// apply the first swap of at most `t` independent outside vertices that
/// strictly increases `Σ_{v∈A} w(v)^alpha`.
pub fn power_local_search(
    graph: &ConflictGraph,
    alpha: &Rational,
    t: usize,
    budget: &mut Budget,
) -> Result<WeightedOutcome> {
    power_local_search_from(graph, &greedy_weighted(graph), alpha, t, budget)
}

/// [`power_local_search`] from a given independent set.
pub fn power_local_search_from(
    graph: &ConflictGraph,
    start: &[usize],
    alpha: &Rational,
    t: usize,
    budget: &mut Budget,
) -> Result<WeightedOutcome> {
    if !alpha.is_positive() {
        return Err(Error::Precondition("alpha must be positive".into()));
    }
    if t == 0 {
        return Err(Error::Precondition("t must be at least 1".into()));
    }
    let powers = PowerWeights::new(graph, alpha);
    let n = graph.vertex_count();
    let mut a = independent_bits(graph, start)?;
    let mut iterations = 0;
    loop {
        let outside: Vec<usize> = (0..n).filter(|&v| !a.contains(v)).collect();
        let mut found = None;
        for size in 1..=t.min(outside.len()) {
            found = first_subset(graph, &outside, size, budget, &mut |incoming| {
                let out = solution_neighbours(graph, &a, incoming);
                powers.improves(incoming, &out)
            })?;
            if found.is_some() {
                break;
            }
        }
        match found {
            Some(incoming) => {
                a = swap_in(graph, &a, &incoming);
                iterations += 1;
            }
            None => {
                return Ok(WeightedOutcome {
                    set: a.to_vec(),
                    iterations,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, five_two::*};
    use crate::{int, ratio};

    fn s_set() -> Vec<usize> {
        sorted(S.to_vec())
    }

    #[test]
    fn charge_on_five_against_two() {
        let g = fixtures::five_two_graph();
        let a = s_set();
        assert_eq!(charge(&g, &a, T1, S3).unwrap(), int(3));
        assert_eq!(charge(&g, &a, T2, S3).unwrap(), int(3));
        assert_eq!(charge(&g, &a, T1, S1).unwrap(), int(0));
    }

    #[test]
    fn charge_single_neighbour() {
        let g = ConflictGraph::from_edges(2, &[(0, 1)], vec![int(2), int(2)]).unwrap();
        assert_eq!(charge(&g, &[1], 0, 1).unwrap(), int(1));
    }

    #[test]
    fn charge_preconditions() {
        let g = fixtures::five_two_graph();
        assert!(charge(&g, &[T1, S1], T2, S3).is_err());
        assert!(charge(&g, &s_set(), S1, S3).is_err());
        assert!(charge(&g, &s_set(), T1, T2).is_err());
    }

    #[test]
    fn nice_claw_on_five_against_two() {
        let g = fixtures::five_two_graph();
        let claw = find_nice_claw(&g, &s_set()).unwrap().unwrap();
        assert_eq!(
            claw,
            Claw {
                center: Some(S3),
                talons: vec![T1, T2]
            }
        );
        let next = apply_claw(&g, &s_set(), &claw).unwrap();
        assert_eq!(next, vec![T1, T2]);
        assert_eq!(g.total_weight(&next) - g.total_weight(&s_set()), int(-14));
        assert_eq!(squared_weight(&g, &s_set()), int(500));
        assert_eq!(squared_weight(&g, &next), int(648));
    }

    #[test]
    fn maximum_weight_clique_vertex_has_no_nice_claw() {
        let g =
            ConflictGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], vec![int(1), int(5), int(2)])
                .unwrap();
        assert_eq!(find_nice_claw(&g, &[1]).unwrap(), None);
    }

    #[test]
    fn isolated_vertex_is_a_one_claw() {
        let g = ConflictGraph::from_edges(3, &[(0, 1)], vec![int(1), int(1), int(1)]).unwrap();
        let claw = find_nice_claw(&g, &[0]).unwrap().unwrap();
        assert_eq!(
            claw,
            Claw {
                center: None,
                talons: vec![2]
            }
        );
        assert_eq!(apply_claw(&g, &[0], &claw).unwrap(), vec![0, 2]);
    }

    #[test]
    fn apply_claw_rejects_inconsistent_input() {
        let g = fixtures::five_two_graph();
        let bad_center = Claw {
            center: Some(S1),
            talons: vec![T2],
        };
        assert!(apply_claw(&g, &s_set(), &bad_center).is_err());
        let dependent = Claw {
            center: None,
            talons: vec![T1, S1],
        };
        assert!(apply_claw(&g, &[], &dependent).is_err());
    }

    #[test]
    fn wishful_thinking_on_five_against_two() {
        let g = fixtures::five_two_graph();
        let out = wishful_thinking(&g, 4).unwrap();
        assert_eq!(out.set, vec![T1, T2]);
        assert_eq!(g.total_weight(&out.set), int(36));
    }

    #[test]
    fn wishful_thinking_refuses_claws() {
        let star = ConflictGraph::unweighted(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(wishful_thinking(&star, 4).is_err());
        assert!(wishful_thinking(&star, 5).is_ok());
    }

    #[test]
    fn edgeless_graphs_take_everything() {
        let g = ConflictGraph::unweighted(4, &[]).unwrap();
        assert_eq!(wishful_thinking(&g, 2).unwrap().set, vec![0, 1, 2, 3]);
        let cfg = SquareImpConfig { max_talons: 2 };
        assert_eq!(
            square_imp(&g, cfg, &mut Budget::default()).unwrap().set,
            vec![0, 1, 2, 3]
        );
        assert_eq!(greedy_weighted(&g), vec![0, 1, 2, 3]);
    }

    #[test]
    fn square_improvement_beats_weight_loss() {
        let g = fixtures::five_two_graph();
        assert!(improves_squared_weight(&g, &s_set(), &T).unwrap());
        let out = square_imp(
            &g,
            SquareImpConfig { max_talons: 3 },
            &mut Budget::default(),
        )
        .unwrap();
        assert_eq!(out.set, vec![T1, T2]);
        assert_eq!(squared_weight(&g, &out.set), int(648));
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_weighted(&fixtures::five_two_graph()), vec![T1, T2]);
        let path = ConflictGraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(greedy_weighted(&path), vec![0, 2]);
    }

    #[test]
    fn rescaling_hits_k_times_n() {
        let g = fixtures::five_two_graph();
        let out = rescaled_run(&g, 3).unwrap();
        assert_eq!(out.scaled_start_weight, int(21));
        assert!(out.iterations <= out.iteration_cap);
        assert!(!out.capped);
    }

    #[test]
    fn power_search_threshold() {
        let g = fixtures::five_two_graph();
        let mut b = Budget::default();
        let squared = power_local_search(&g, &int(2), 2, &mut b).unwrap();
        assert_eq!(squared.set, vec![T1, T2]);
        let linear = power_local_search(&g, &int(1), 2, &mut b).unwrap();
        assert_eq!(linear.set, s_set());

        let s = s_set();
        assert!(power_swap_gain(&g, &s, &T, &int(2)).unwrap() > 147.9);
        assert!(power_swap_gain(&g, &s, &T, &int(1)).unwrap() < 0.0);
        assert!(power_swap_gain(&g, &s, &T, &ratio(3, 2)).unwrap() < 0.0);
        assert!(power_swap_gain(&g, &s, &T, &ratio(8, 5)).unwrap() > 0.0);
        let below = power_local_search_from(&g, &s, &ratio(3, 2), 2, &mut b).unwrap();
        let above = power_local_search_from(&g, &s, &ratio(8, 5), 2, &mut b).unwrap();
        assert_eq!(below.set, s_set());
        assert_eq!(above.set, vec![T1, T2]);
    }

    #[test]
    fn power_search_rejects_bad_parameters() {
        let g = fixtures::five_two_graph();
        assert!(power_local_search(&g, &int(0), 2, &mut Budget::default()).is_err());
        assert!(power_local_search(&g, &int(1), 0, &mut Budget::default()).is_err());
    }
}
