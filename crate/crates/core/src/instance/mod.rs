//! Set systems, packings and their validation.

mod generate;
mod io;

pub use generate::{gen_projective_plane, gen_random, is_prime, WeightRange};
pub use io::{parse_graph, parse_instance, serialize_graph, serialize_instance, GraphSpec};

use std::fmt;

use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

/// First violated invariant of an [`Instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyUniverse,
    NoSets,
    ZeroCardinality,
    EmptySet { set: usize },
    SetTooLarge { set: usize, size: usize, k: usize },
    ElementOutOfRange { set: usize, element: usize },
    DuplicateElement { set: usize, element: usize },
    UnsortedSet { set: usize },
    WeightCount { expected: usize, found: usize },
    NonPositiveWeight { set: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyUniverse => write!(f, "universe size must be at least 1"),
            Violation::NoSets => write!(f, "instance must contain at least one set"),
            Violation::ZeroCardinality => write!(f, "k must be at least 1"),
            Violation::EmptySet { set } => write!(f, "set {set} is empty"),
            Violation::SetTooLarge { set, size, k } => {
                write!(f, "set {set} has {size} elements, more than k = {k}")
            }
            Violation::ElementOutOfRange { set, element } => {
                write!(
                    f,
                    "set {set} contains element {element} outside the universe"
                )
            }
            Violation::DuplicateElement { set, element } => {
                write!(f, "set {set} contains element {element} twice")
            }
            Violation::UnsortedSet { set } => write!(f, "set {set} is not sorted"),
            Violation::WeightCount { expected, found } => {
                write!(f, "expected {expected} weights, found {found}")
            }
            Violation::NonPositiveWeight { set } => {
                write!(f, "weight of set {set} is not strictly positive")
            }
        }
    }
}

/// A family of at most `k`-element subsets of the universe `0..universe_size`,
/// optionally weighted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    universe_size: usize,
    k: usize,
    sets: Vec<Vec<usize>>,
    weights: Option<Vec<Rational>>,
}

impl Instance {
    /// Sorts every set and validates the result.
    pub fn new(
        universe_size: usize,
        k: usize,
        mut sets: Vec<Vec<usize>>,
        weights: Option<Vec<Rational>>,
    ) -> Result<Self> {
        for s in &mut sets {
            s.sort_unstable();
        }
        let inst = Instance::unchecked(universe_size, k, sets, weights);
        inst.validate().map_err(Error::InvalidInstance)?;
        Ok(inst)
    }

    /// Builds an instance without any checks. Callers are expected to run
    /// [`Instance::validate`] before using it with the solvers.
    pub fn unchecked(
        universe_size: usize,
        k: usize,
        sets: Vec<Vec<usize>>,
        weights: Option<Vec<Rational>>,
    ) -> Self {
        Instance {
            universe_size,
            k,
            sets,
            weights,
        }
    }

    /// Reports the first violated invariant, scanning header fields, then
    /// sets in order, then weights.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        if self.universe_size == 0 {
            return Err(Violation::EmptyUniverse);
        }
        if self.sets.is_empty() {
            return Err(Violation::NoSets);
        }
        if self.k == 0 {
            return Err(Violation::ZeroCardinality);
        }
        for (i, s) in self.sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Violation::EmptySet { set: i });
            }
            for (pos, &e) in s.iter().enumerate() {
                if e >= self.universe_size {
                    return Err(Violation::ElementOutOfRange { set: i, element: e });
                }
                if pos > 0 {
                    let prev = s[pos - 1];
                    if prev == e {
                        return Err(Violation::DuplicateElement { set: i, element: e });
                    }
                    if prev > e {
                        return Err(Violation::UnsortedSet { set: i });
                    }
                }
            }
            if s.len() > self.k {
                return Err(Violation::SetTooLarge {
                    set: i,
                    size: s.len(),
                    k: self.k,
                });
            }
        }
        if let Some(w) = &self.weights {
            if w.len() != self.sets.len() {
                return Err(Violation::WeightCount {
                    expected: self.sets.len(),
                    found: w.len(),
                });
            }
            if let Some(i) = w.iter().position(|x| *x <= Rational::zero()) {
                return Err(Violation::NonPositiveWeight { set: i });
            }
        }
        Ok(())
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    pub fn weights(&self) -> Option<&[Rational]> {
        self.weights.as_deref()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Weight of set `i`; 1 for unweighted instances.
    pub fn weight(&self, i: usize) -> Rational {
        match &self.weights {
            Some(w) => w[i].clone(),
            None => Rational::one(),
        }
    }

    /// All weights, materialising unit weights for unweighted instances.
    pub fn weight_vec(&self) -> Vec<Rational> {
        (0..self.num_sets()).map(|i| self.weight(i)).collect()
    }

    /// Same sets with the given weights attached.
    pub fn with_weights(&self, weights: Option<Vec<Rational>>) -> Result<Self> {
        let inst = Instance {
            weights,
            ..self.clone()
        };
        inst.validate().map_err(Error::InvalidInstance)?;
        Ok(inst)
    }

    /// Whether two sets share an element.
    pub fn intersects(&self, a: usize, b: usize) -> bool {
        sorted_intersect(&self.sets[a], &self.sets[b])
    }

    /// Instance encoding of a vertex-weighted graph: every edge becomes a
    /// private element shared by its two endpoints, every isolated vertex
    /// gets a private element of its own. Set `i` corresponds to vertex `i`
    /// and `k` is the maximum degree (at least 1).
    pub fn from_graph(
        vertex_count: usize,
        edges: &[(usize, usize)],
        weights: Option<Vec<Rational>>,
    ) -> Result<Self> {
        let mut sets = vec![Vec::new(); vertex_count];
        for (e, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::IndexOutOfRange {
                        index: x,
                        size: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::Precondition(format!("loop at vertex {u}")));
            }
            sets[u].push(e);
            sets[v].push(e);
        }
        let mut next = edges.len();
        for s in &mut sets {
            if s.is_empty() {
                s.push(next);
                next += 1;
            }
        }
        let k = sets.iter().map(Vec::len).max().unwrap_or(1).max(1);
        Instance::new(next.max(1), k, sets, weights)
    }
}

pub(crate) fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Checks that `indices` reference pairwise disjoint sets.
pub fn is_packing(instance: &Instance, indices: &[usize]) -> Result<bool> {
    let n = instance.num_sets();
    if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: n,
        });
    }
    let mut seen = vec![false; instance.universe_size()];
    let mut used = vec![false; n];
    for &i in indices {
        if std::mem::replace(&mut used[i], true) {
            return Ok(false);
        }
        for &e in instance.set(i) {
            if std::mem::replace(&mut seen[e], true) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A collection of pairwise disjoint sets of an instance, stored as sorted
/// set indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Packing {
    members: Vec<usize>,
}

impl Packing {
    pub fn empty() -> Self {
        Packing::default()
    }

    pub fn new(instance: &Instance, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPacking("duplicate member".into()));
        }
        if !is_packing(instance, &members)? {
            return Err(Error::InvalidPacking(
                "members are not pairwise disjoint".into(),
            ));
        }
        Ok(Packing { members })
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Packing { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }
}

/// Total weight of the packing (its cardinality when unweighted).
pub fn packing_value(instance: &Instance, packing: &Packing) -> Result<Rational> {
    if !is_packing(instance, packing.members())? {
        return Err(Error::InvalidPacking(
            "members are not pairwise disjoint".into(),
        ));
    }
    Ok(packing.members().iter().map(|&i| instance.weight(i)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{fixtures, int};

    #[test]
    fn fano_plane_is_valid() {
        assert_eq!(fixtures::fano_plane().validate(), Ok(()));
    }

    #[test]
    fn element_equal_to_universe_size_is_out_of_range() {
        let inst = Instance::unchecked(3, 3, vec![vec![0, 1], vec![2, 3]], None);
        assert_eq!(
            inst.validate(),
            Err(Violation::ElementOutOfRange { set: 1, element: 3 })
        );
    }

    #[test]
    fn duplicate_element_is_reported() {
        let inst = Instance::unchecked(5, 3, vec![vec![0, 1], vec![2, 2, 4]], None);
        assert_eq!(
            inst.validate(),
            Err(Violation::DuplicateElement { set: 1, element: 2 })
        );
        let err = Instance::new(5, 3, vec![vec![4, 2, 2]], None).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidInstance(Violation::DuplicateElement { set: 0, element: 2 })
        );
    }

    #[test]
    fn header_and_weight_violations() {
        assert_eq!(
            Instance::unchecked(0, 1, vec![vec![0]], None).validate(),
            Err(Violation::EmptyUniverse)
        );
        assert_eq!(
            Instance::unchecked(2, 1, vec![], None).validate(),
            Err(Violation::NoSets)
        );
        assert_eq!(
            Instance::unchecked(2, 0, vec![vec![0]], None).validate(),
            Err(Violation::ZeroCardinality)
        );
        assert_eq!(
            Instance::unchecked(4, 2, vec![vec![0, 1, 2]], None).validate(),
            Err(Violation::SetTooLarge {
                set: 0,
                size: 3,
                k: 2
            })
        );
        assert_eq!(
            Instance::unchecked(4, 2, vec![vec![0], vec![1]], Some(vec![int(1), int(0)]))
                .validate(),
            Err(Violation::NonPositiveWeight { set: 1 })
        );
        assert_eq!(
            Instance::unchecked(4, 2, vec![vec![0]], Some(vec![int(1), int(2)])).validate(),
            Err(Violation::WeightCount {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn smaller_sets_are_accepted_without_padding() {
        assert!(Instance::new(4, 3, vec![vec![0], vec![1, 2]], None).is_ok());
    }

    #[test]
    fn any_two_fano_lines_intersect() {
        let fano = fixtures::fano_plane();
        for a in 0..7 {
            for b in 0..7 {
                if a != b {
                    assert!(!is_packing(&fano, &[a, b]).unwrap());
                }
            }
        }
        assert!(is_packing(&fano, &[]).unwrap());
        assert!(is_packing(&fano, &[3]).unwrap());
        assert!(matches!(
            is_packing(&fano, &[7]),
            Err(Error::IndexOutOfRange { index: 7, size: 7 })
        ));
    }

    #[test]
    fn packing_values() {
        let disjoint = fixtures::disjoint_sets(5, 3);
        let p = Packing::new(&disjoint, vec![0, 2, 4]).unwrap();
        assert_eq!(packing_value(&disjoint, &p).unwrap(), int(3));
        assert_eq!(packing_value(&disjoint, &Packing::empty()).unwrap(), int(0));

        let weighted = disjoint.with_weights(Some(vec![int(10); 5])).unwrap();
        let all = Packing::new(&weighted, (0..5).collect()).unwrap();
        assert_eq!(packing_value(&weighted, &all).unwrap(), int(50));
    }

    #[test]
    fn packing_rejects_overlap() {
        let fano = fixtures::fano_plane();
        assert!(matches!(
            Packing::new(&fano, vec![0, 1]),
            Err(Error::InvalidPacking(_))
        ));
        assert!(matches!(
            Packing::new(&fano, vec![0, 0]),
            Err(Error::InvalidPacking(_))
        ));
    }

    #[test]
    fn graph_reduction_preserves_adjacency() {
        let edges = [(0, 1), (1, 2)];
        let inst = Instance::from_graph(4, &edges, None).unwrap();
        assert_eq!(inst.k(), 2);
        assert!(inst.intersects(0, 1));
        assert!(inst.intersects(1, 2));
        assert!(!inst.intersects(0, 2));
        assert!(!inst.intersects(3, 0));
        assert_eq!(inst.set(3).len(), 1);
    }
}
