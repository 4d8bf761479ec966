use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Instance;
use crate::{Error, Rational, Result};

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Normalised homogeneous coordinates of PG(2, q): the first nonzero
/// coordinate is 1.
fn projective_points(q: u64) -> Vec<[u64; 3]> {
    let mut pts = Vec::with_capacity((q * q + q + 1) as usize);
    pts.push([0, 0, 1]);
    for b in 0..q {
        pts.push([0, 1, b]);
    }
    for a in 0..q {
        for b in 0..q {
            pts.push([1, a, b]);
        }
    }
    pts
}

/// Projective plane of prime order `q`: the points of PG(2, q) are the
/// elements, its lines are the sets.
///
/// The result has `q² + q + 1` elements and sets, every set has `q + 1`
/// elements, any two sets meet in exactly one element. `q = 2` gives the
/// Fano plane.
pub fn gen_projective_plane(q: u64) -> Result<Instance> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let points = projective_points(q);
    // PG(2, q) is self-dual: lines are indexed by the same normalised vectors.
    let sets = points
        .iter()
        .map(|line| {
            points
                .iter()
                .enumerate()
                .filter(|(_, p)| (0..3).map(|i| p[i] * line[i]).sum::<u64>() % q == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Instance::new(points.len(), (q + 1) as usize, sets, None)
}

/// Closed interval of positive rationals used to draw random weights.
///
/// Integral endpoints draw uniform integers; otherwise weights are drawn
/// uniformly from the 101-point grid `lo + j·(hi − lo)/100`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightRange {
    pub lo: Rational,
    pub hi: Rational,
}

impl WeightRange {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo <= Rational::zero() || hi < lo {
            return Err(Error::Infeasible(format!(
                "weight range [{lo}, {hi}] must be positive and ordered"
            )));
        }
        Ok(WeightRange { lo, hi })
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> Rational {
        if self.lo.is_integer() && self.hi.is_integer() {
            let span = (self.hi.to_integer() - self.lo.to_integer()).to_string();
            let span: u64 = span.parse().unwrap_or(u64::MAX - 1);
            let step = rng.random_range(0..=span);
            &self.lo + Rational::from_integer(BigInt::from(step))
        } else {
            let j = rng.random_range(0..=100i64);
            &self.lo + (&self.hi - &self.lo) * Rational::new(j.into(), 100.into())
        }
    }
}

fn binomial_at_least(n: usize, k: usize, bound: usize) -> bool {
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
        if c >= bound as u128 {
            return true;
        }
    }
    c >= bound as u128
}

/// `n` distinct uniform random `k`-subsets of a universe of `universe_size`
/// elements, deterministic in `seed`.
pub fn gen_random(
    universe_size: usize,
    n: usize,
    k: usize,
    weights: Option<&WeightRange>,
    seed: u64,
) -> Result<Instance> {
    if k == 0 || n == 0 {
        return Err(Error::Infeasible("n and k must be positive".into()));
    }
    if universe_size < k {
        return Err(Error::Infeasible(format!(
            "universe of {universe_size} elements has no {k}-subset"
        )));
    }
    if !binomial_at_least(universe_size, k, n) {
        return Err(Error::Infeasible(format!(
            "fewer than {n} distinct {k}-subsets of a {universe_size}-element universe"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(n);
    let mut sets = Vec::with_capacity(n);
    let mut failures = 0usize;
    while sets.len() < n {
        let mut s = rand::seq::index::sample(&mut rng, universe_size, k).into_vec();
        s.sort_unstable();
        if seen.insert(s.clone()) {
            sets.push(s);
        } else {
            failures += 1;
            if failures > 100 * n {
                return Err(Error::Infeasible(format!(
                    "gave up after {failures} duplicate draws"
                )));
            }
        }
    }
    let weights = weights.map(|range| (0..n).map(|_| range.sample(&mut rng)).collect());
    Instance::new(universe_size, k, sets, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::sorted_intersect;
    use crate::int;

    fn check_plane(q: u64) {
        let inst = gen_projective_plane(q).unwrap();
        let size = (q * q + q + 1) as usize;
        let k = (q + 1) as usize;
        assert_eq!(inst.universe_size(), size);
        assert_eq!(inst.num_sets(), size);
        assert_eq!(inst.k(), k);
        for s in inst.sets() {
            assert_eq!(s.len(), k);
        }
        for a in 0..size {
            for b in a + 1..size {
                let common = inst
                    .set(a)
                    .iter()
                    .filter(|e| inst.set(b).contains(e))
                    .count();
                assert_eq!(common, 1, "lines {a} and {b}");
            }
        }
        let mut degree = vec![0; size];
        for s in inst.sets() {
            for &e in s {
                degree[e] += 1;
            }
        }
        assert!(degree.iter().all(|&d| d == k));
    }

    #[test]
    fn order_two_is_the_fano_plane() {
        let fano = gen_projective_plane(2).unwrap();
        assert_eq!((fano.universe_size(), fano.num_sets(), fano.k()), (7, 7, 3));
        check_plane(2);
    }

    #[test]
    fn prime_orders_are_planes() {
        for q in [3, 5, 7] {
            check_plane(q);
        }
    }

    #[test]
    fn non_prime_order_is_rejected() {
        assert_eq!(gen_projective_plane(4), Err(Error::NotPrime(4)));
        assert_eq!(gen_projective_plane(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn random_is_deterministic() {
        let a = gen_random(9, 5, 3, None, 7).unwrap();
        let b = gen_random(9, 5, 3, None, 7).unwrap();
        assert_eq!(a, b);
        let c = gen_random(9, 5, 3, None, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_rejects_infeasible_parameters() {
        assert!(matches!(
            gen_random(3, 2, 3, None, 0),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            gen_random(2, 1, 3, None, 0),
            Err(Error::Infeasible(_))
        ));
        assert!(gen_random(3, 1, 3, None, 0).is_ok());
    }

    #[test]
    fn random_instances_validate_and_are_distinct() {
        let inst = gen_random(12, 20, 3, None, 1).unwrap();
        assert_eq!(inst.validate(), Ok(()));
        let uniq: HashSet<_> = inst.sets().iter().collect();
        assert_eq!(uniq.len(), 20);
        assert!(inst.sets().iter().all(|s| s.len() == 3));
        assert!(!sorted_intersect(&[0, 2], &[1, 3]));
    }

    #[test]
    fn random_weights_stay_in_range() {
        let range = WeightRange::new(int(1), int(10)).unwrap();
        let inst = gen_random(12, 20, 3, Some(&range), 4).unwrap();
        for w in inst.weights().unwrap() {
            assert!(w.is_integer() && *w >= int(1) && *w <= int(10));
        }
        let frac = WeightRange::new(crate::ratio(1, 2), int(2)).unwrap();
        let inst = gen_random(12, 20, 3, Some(&frac), 4).unwrap();
        for w in inst.weights().unwrap() {
            assert!(*w >= crate::ratio(1, 2) && *w <= int(2));
        }
        assert!(WeightRange::new(int(0), int(1)).is_err());
    }
}
