use std::fmt;
use std::str::FromStr;

use kspack::exact::max_packing_exact_capped;
use kspack::local_search::{log_local_search, t_local_search};
use kspack::weighted_search::{
    greedy_weighted, power_local_search, square_imp, wishful_thinking, SquareImpConfig,
};
use kspack::{parse_rational, Budget, ConflictGraph, Instance, Rational};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algorithm {
    Exact,
    Greedy,
    Local(usize),
    LogLocal(Rational),
    Wishful,
    SquareImp,
    Power(Rational, usize),
}

impl FromStr for Algorithm {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = |why: &str| CliError::Input(format!("algorithm `{s}`: {why}"));
        let positive_usize = |t: &str| match t.parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(bad("expected a positive integer")),
        };
        let positive_rational = |t: &str| match parse_rational(t) {
            Some(r) if r > Rational::from_integer(0.into()) => Ok(r),
            _ => Err(bad("expected a positive rational")),
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["exact"] => Ok(Algorithm::Exact),
            ["greedy"] => Ok(Algorithm::Greedy),
            ["local", t] => Ok(Algorithm::Local(positive_usize(t)?)),
            ["loglocal", eps] => Ok(Algorithm::LogLocal(positive_rational(eps)?)),
            ["wishful"] => Ok(Algorithm::Wishful),
            ["squareimp"] => Ok(Algorithm::SquareImp),
            ["power", alpha, t] => Ok(Algorithm::Power(positive_rational(alpha)?, positive_usize(t)?)),
            _ => Err(bad(
                "expected exact, greedy, local:<t>, loglocal:<eps>, wishful, squareimp or power:<alpha>:<t>",
            )),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Exact => write!(f, "exact"),
            Algorithm::Greedy => write!(f, "greedy"),
            Algorithm::Local(t) => write!(f, "local:{t}"),
            Algorithm::LogLocal(eps) => write!(f, "loglocal:{eps}"),
            Algorithm::Wishful => write!(f, "wishful"),
            Algorithm::SquareImp => write!(f, "squareimp"),
            Algorithm::Power(alpha, t) => write!(f, "power:{alpha}:{t}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub value: Rational,
    /// Set indices in file order, 0-based and sorted.
    pub members: Vec<usize>,
    pub iterations: usize,
}

fn weighted_graph(instance: &Instance) -> ConflictGraph {
    ConflictGraph::from_instance(instance)
}

pub fn run(
    algorithm: &Algorithm,
    instance: &Instance,
    budget: &mut Budget,
    oracle_cap: usize,
) -> kspack::Result<Solution> {
    let (members, iterations) = match algorithm {
        Algorithm::Exact => (
            max_packing_exact_capped(instance, oracle_cap)?
                .members()
                .to_vec(),
            0,
        ),
        Algorithm::Greedy => (greedy_weighted(&weighted_graph(instance)), 0),
        Algorithm::Local(t) => {
            let out = t_local_search(instance, *t, budget)?;
            (out.packing.members().to_vec(), out.iterations)
        }
        Algorithm::LogLocal(eps) => {
            let out = log_local_search(instance, eps, budget)?;
            (out.packing.members().to_vec(), out.iterations)
        }
        Algorithm::Wishful => {
            let out = wishful_thinking(&weighted_graph(instance), instance.k() + 1)?;
            (out.set, out.iterations)
        }
        Algorithm::SquareImp => {
            let config = SquareImpConfig {
                max_talons: instance.k(),
            };
            let out = square_imp(&weighted_graph(instance), config, budget)?;
            (out.set, out.iterations)
        }
        Algorithm::Power(alpha, t) => {
            let out = power_local_search(&weighted_graph(instance), alpha, *t, budget)?;
            (out.set, out.iterations)
        }
    };
    let value = members.iter().map(|&m| instance.weight(m)).sum();
    Ok(Solution {
        value,
        members,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in [
            "exact",
            "greedy",
            "local:2",
            "loglocal:1/2",
            "wishful",
            "squareimp",
            "power:3/2:2",
        ] {
            assert_eq!(name.parse::<Algorithm>().unwrap().to_string(), name);
        }
        assert_eq!(
            "loglocal:0.5".parse::<Algorithm>().unwrap().to_string(),
            "loglocal:1/2"
        );
    }

    #[test]
    fn bad_names() {
        for name in [
            "",
            "local",
            "local:0",
            "local:x",
            "power:2",
            "power:-1:2",
            "loglocal:0",
            "tabu",
        ] {
            assert!(name.parse::<Algorithm>().is_err(), "{name}");
        }
    }
}
