//! Laboratory for the k-set packing problem.
//!
//! The crate bundles the data model for set systems ([`Instance`],
//! [`Packing`], [`ConflictGraph`]), exact oracles, unweighted and weighted
//! local search, LP relaxations solved exactly over the rationals, and an
//! SDPA exporter for the Lovász theta relaxation of the conflict graph.
//!
//! All weights and LP quantities are exact rationals ([`Rational`]), so
//! approximation ratios and integrality gaps compare with `==`.
//!
//! ```
//! use kspack::instance::gen_projective_plane;
//! use kspack::relaxation::{integrality_gap, GapVariant};
//!
//! let plane = gen_projective_plane(2)?;
//! let gap = integrality_gap(&plane, GapVariant::Standard)?;
//! assert_eq!(gap.gap, kspack::ratio(7, 3));
//! # Ok::<(), kspack::Error>(())
//! ```

pub mod bitset;
pub mod budget;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod graph;
pub mod instance;
pub mod local_search;
pub mod multigraph;
pub mod relaxation;
pub mod weighted_search;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::ConflictGraph;
pub use instance::{Instance, Packing, Violation};
pub use multigraph::Multigraph;
pub use relaxation::{LinearProgram, LpSolution, LpStatus};

/// Exact rational number used for weights, LP coefficients and ratios.
pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer numerator and denominator.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Builds an integral rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(value.into())
}

/// Parses `p/q`, an integer, or a decimal such as `-0.25`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    use num_bigint::BigInt;
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let den: BigInt = q.parse().ok()?;
        if den == BigInt::from(0) {
            return None;
        }
        return Some(Rational::new(p.parse().ok()?, den));
    }
    match text.split_once('.') {
        None => Some(Rational::from_integer(text.parse().ok()?)),
        Some((whole, frac)) => {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let negative = whole.starts_with('-');
            let digits = format!("{}{frac}", whole.trim_start_matches(['-', '+']));
            let num: BigInt = digits.parse().ok()?;
            let num = if negative { -num } else { num };
            Some(Rational::new(
                num,
                num_traits::Pow::pow(BigInt::from(10), frac.len() as u32),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("7/3"), Some(ratio(7, 3)));
        assert_eq!(parse_rational("-4"), Some(int(-4)));
        assert_eq!(parse_rational("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("-0.5"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1."), None);
        assert_eq!(parse_rational("x"), None);
    }
}
