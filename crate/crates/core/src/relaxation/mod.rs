//! LP relaxations of set packing, an exact simplex solver, integrality gaps
//! and the θ₃ SDP export.

mod cliques;
mod sdpa;
mod simplex;

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::{ConflictGraph, Error, Instance, Rational, Result};

pub use cliques::{enumerate_maximal_cliques, DEFAULT_CLIQUE_CAP};
pub use sdpa::{export_theta3_sdp, parse_sdpa, SdpaEntry, SdpaProblem};
pub use simplex::{certify, solve_lp};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

/// Where a constraint row comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowLabel {
    /// Packing constraint of one universe element.
    Degree(usize),
    /// Maximal clique of the conflict graph, by enumeration index.
    Clique(usize),
    /// Explicit bound row on one variable.
    Box(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    /// Sparse row, sorted by variable with no zero entries.
    pub coefficients: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
    pub label: RowLabel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub lower: Rational,
    /// `None` is unbounded above.
    pub upper: Option<Rational>,
}

/// `maximize objective·x` subject to the constraints and variable bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    bounds: Vec<Bounds>,
}

impl LinearProgram {
    /// Variables default to `[0, ∞)`.
    pub fn new(objective: Vec<Rational>) -> Self {
        let bounds = vec![
            Bounds {
                lower: Rational::zero(),
                upper: None
            };
            objective.len()
        ];
        LinearProgram {
            objective,
            constraints: Vec::new(),
            bounds,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn bounds(&self) -> &[Bounds] {
        &self.bounds
    }

    pub fn set_bounds(
        &mut self,
        var: usize,
        lower: Rational,
        upper: Option<Rational>,
    ) -> Result<()> {
        if var >= self.num_vars() {
            return Err(Error::IndexOutOfRange {
                index: var,
                size: self.num_vars(),
            });
        }
        if upper.as_ref().is_some_and(|u| *u < lower) {
            return Err(Error::Precondition(format!(
                "variable {var} has lower bound above upper bound"
            )));
        }
        self.bounds[var] = Bounds { lower, upper };
        Ok(())
    }

    /// Adds a row; duplicate variables are summed and zeros dropped.
    pub fn add_constraint(
        &mut self,
        coefficients: Vec<(usize, Rational)>,
        relation: Relation,
        rhs: Rational,
        label: RowLabel,
    ) -> Result<()> {
        let mut row: Vec<(usize, Rational)> = Vec::with_capacity(coefficients.len());
        let mut sorted = coefficients;
        sorted.sort_by_key(|(j, _)| *j);
        for (j, a) in sorted {
            if j >= self.num_vars() {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    size: self.num_vars(),
                });
            }
            match row.last_mut() {
                Some((last, acc)) if *last == j => *acc += a,
                _ => row.push((j, a)),
            }
        }
        row.retain(|(_, a)| !a.is_zero());
        self.constraints.push(Constraint {
            coefficients: row,
            relation,
            rhs,
            label,
        });
        Ok(())
    }

    /// Returns a copy with a different objective.
    pub fn with_objective(&self, objective: Vec<Rational>) -> Result<Self> {
        if objective.len() != self.num_vars() {
            return Err(Error::Precondition(
                "objective length does not match variable count".into(),
            ));
        }
        Ok(LinearProgram {
            objective,
            ..self.clone()
        })
    }

    pub fn objective_value(&self, values: &[Rational]) -> Rational {
        self.objective.iter().zip(values).map(|(c, x)| c * x).sum()
    }

    pub fn row_value(row: &Constraint, values: &[Rational]) -> Rational {
        row.coefficients.iter().map(|(j, a)| a * &values[*j]).sum()
    }

    /// Checks every constraint and bound exactly.
    pub fn is_feasible(&self, values: &[Rational]) -> bool {
        values.len() == self.num_vars()
            && self
                .bounds
                .iter()
                .zip(values)
                .all(|(b, x)| *x >= b.lower && b.upper.as_ref().is_none_or(|u| x <= u))
            && self.constraints.iter().all(|c| {
                let lhs = Self::row_value(c, values);
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    /// Plain-text dump for debugging.
    ///
    /// ```text
    /// maximize 1 1 1
    /// bounds 1 0 1
    /// degree 1: 1 x1 + 1 x2 <= 1
    /// ```
    /// Variables and elements are 1-based; an unbounded upper bound is `inf`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let obj: Vec<String> = self.objective.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "maximize {}", obj.join(" "));
        for (j, b) in self.bounds.iter().enumerate() {
            let upper = b
                .upper
                .as_ref()
                .map_or("inf".to_string(), |u| u.to_string());
            let _ = writeln!(out, "bounds {} {} {}", j + 1, b.lower, upper);
        }
        for c in &self.constraints {
            let label = match c.label {
                RowLabel::Degree(e) => format!("degree {}", e + 1),
                RowLabel::Clique(i) => format!("clique {}", i + 1),
                RowLabel::Box(j) => format!("box {}", j + 1),
            };
            let terms: Vec<String> = c
                .coefficients
                .iter()
                .map(|(j, a)| format!("{a} x{}", j + 1))
                .collect();
            let rel = match c.relation {
                Relation::Le => "<=",
                Relation::Eq => "=",
            };
            let _ = writeln!(out, "{label}: {} {rel} {}", terms.join(" + "), c.rhs);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal values; empty unless optimal.
    pub values: Vec<Rational>,
    pub objective_value: Rational,
    /// One multiplier per constraint row; empty unless optimal.
    pub duals: Vec<Rational>,
}

fn objective_of(instance: &Instance) -> Vec<Rational> {
    instance.weight_vec()
}

/// One variable per set in `[0, 1]` and one packing row per element that
/// lies in some set.
pub fn build_standard_lp(instance: &Instance) -> LinearProgram {
    let mut lp = LinearProgram::new(objective_of(instance));
    for j in 0..instance.num_sets() {
        lp.set_bounds(j, Rational::zero(), Some(Rational::one()))
            .expect("valid bounds");
    }
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); instance.universe_size()];
    for (j, set) in instance.sets().iter().enumerate() {
        for &e in set {
            containing[e].push(j);
        }
    }
    for (e, sets) in containing.into_iter().enumerate() {
        if !sets.is_empty() {
            let row = sets.into_iter().map(|j| (j, Rational::one())).collect();
            lp.add_constraint(row, Relation::Le, Rational::one(), RowLabel::Degree(e))
                .expect("indices in range");
        }
    }
    lp
}

/// The standard LP plus `x(K) ≤ 1` for every maximal clique `K` of the
/// conflict graph.
pub fn build_intersecting_family_lp(instance: &Instance, cap: usize) -> Result<LinearProgram> {
    let mut lp = build_standard_lp(instance);
    let graph = ConflictGraph::from_instance(instance);
    for (i, clique) in enumerate_maximal_cliques(&graph, cap)?
        .into_iter()
        .enumerate()
    {
        let row = clique.into_iter().map(|j| (j, Rational::one())).collect();
        lp.add_constraint(row, Relation::Le, Rational::one(), RowLabel::Clique(i))?;
    }
    Ok(lp)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapVariant {
    Standard,
    Intersecting,
}

impl FromStr for GapVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(GapVariant::Standard),
            "intersecting" => Ok(GapVariant::Intersecting),
            _ => Err(Error::Precondition(format!("unknown LP variant `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub lp_value: Rational,
    pub ilp_value: Rational,
    pub gap: Rational,
}

pub fn build_lp(
    instance: &Instance,
    variant: GapVariant,
    clique_cap: usize,
) -> Result<LinearProgram> {
    match variant {
        GapVariant::Standard => Ok(build_standard_lp(instance)),
        GapVariant::Intersecting => build_intersecting_family_lp(instance, clique_cap),
    }
}

/// LP optimum divided by the exact packing optimum.
pub fn integrality_gap(instance: &Instance, variant: GapVariant) -> Result<GapReport> {
    integrality_gap_capped(
        instance,
        variant,
        crate::exact::DEFAULT_CAP,
        DEFAULT_CLIQUE_CAP,
    )
}

pub fn integrality_gap_capped(
    instance: &Instance,
    variant: GapVariant,
    oracle_cap: usize,
    clique_cap: usize,
) -> Result<GapReport> {
    let lp = build_lp(instance, variant, clique_cap)?;
    let sol = solve_lp(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Infeasible(format!(
            "LP relaxation is {:?}",
            sol.status
        )));
    }
    let packing = crate::exact::max_packing_exact_capped(instance, oracle_cap)?;
    let ilp_value = crate::instance::packing_value(instance, &packing)?;
    let gap = &sol.objective_value / &ilp_value;
    Ok(GapReport {
        lp_value: sol.objective_value,
        ilp_value,
        gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::instance::gen_projective_plane;
    use crate::{int, ratio};

    #[test]
    fn fano_standard_lp_shape() {
        let lp = build_standard_lp(&fixtures::fano_plane());
        assert_eq!(lp.num_vars(), 7);
        assert_eq!(lp.constraints().len(), 7);
        assert!(lp.constraints().iter().all(|c| c.coefficients.len() == 3));
        assert!(lp
            .constraints()
            .iter()
            .all(|c| matches!(c.label, RowLabel::Degree(_))));
    }

    #[test]
    fn disjoint_rows_are_singletons() {
        let inst = fixtures::disjoint_sets(4, 3);
        let lp = build_standard_lp(&inst);
        assert!(lp.constraints().iter().all(|c| c.coefficients.len() == 1));
        assert_eq!(solve_lp(&lp).unwrap().objective_value, int(4));
    }

    #[test]
    fn rows_match_incidence() {
        let inst = gen_projective_plane(3).unwrap();
        let lp = build_standard_lp(&inst);
        for c in lp.constraints() {
            let RowLabel::Degree(e) = c.label else {
                panic!("unexpected label")
            };
            let expected: Vec<usize> = (0..inst.num_sets())
                .filter(|&j| inst.set(j).contains(&e))
                .collect();
            let got: Vec<usize> = c.coefficients.iter().map(|(j, _)| *j).collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn fano_values() {
        let fano = fixtures::fano_plane();
        let std = solve_lp(&build_standard_lp(&fano)).unwrap();
        assert_eq!(std.objective_value, ratio(7, 3));
        assert!(std.values.iter().all(|x| *x == ratio(1, 3)));
        let lp = build_intersecting_family_lp(&fano, DEFAULT_CLIQUE_CAP).unwrap();
        assert_eq!(lp.constraints().len(), 8);
        assert_eq!(solve_lp(&lp).unwrap().objective_value, int(1));
        assert_eq!(
            integrality_gap(&fano, GapVariant::Standard).unwrap().gap,
            ratio(7, 3)
        );
        assert_eq!(
            integrality_gap(&fano, GapVariant::Intersecting)
                .unwrap()
                .gap,
            int(1)
        );
    }

    #[test]
    fn triangle_encoding_values() {
        let inst = fixtures::triangle_encoding();
        assert_eq!(
            solve_lp(&build_standard_lp(&inst)).unwrap().objective_value,
            ratio(3, 2)
        );
        let lp = build_intersecting_family_lp(&inst, DEFAULT_CLIQUE_CAP).unwrap();
        assert_eq!(solve_lp(&lp).unwrap().objective_value, int(1));
    }

    #[test]
    fn order_three_plane() {
        let inst = gen_projective_plane(3).unwrap();
        assert_eq!(
            solve_lp(&build_standard_lp(&inst)).unwrap().objective_value,
            ratio(13, 4)
        );
        assert_eq!(
            integrality_gap(&inst, GapVariant::Standard).unwrap().gap,
            ratio(13, 4)
        );
    }

    #[test]
    fn disjoint_gap_is_one() {
        let inst = fixtures::disjoint_sets(5, 2);
        for v in [GapVariant::Standard, GapVariant::Intersecting] {
            assert_eq!(integrality_gap(&inst, v).unwrap().gap, int(1));
        }
    }

    #[test]
    fn constraint_building_checks_input() {
        let mut lp = LinearProgram::new(vec![int(1), int(1)]);
        assert!(lp
            .add_constraint(vec![(2, int(1))], Relation::Le, int(1), RowLabel::Box(2))
            .is_err());
        assert!(lp.set_bounds(0, int(2), Some(int(1))).is_err());
        lp.add_constraint(
            vec![(1, int(1)), (0, int(2)), (1, int(-1))],
            Relation::Le,
            int(1),
            RowLabel::Box(0),
        )
        .unwrap();
        assert_eq!(lp.constraints()[0].coefficients, vec![(0, int(2))]);
    }

    #[test]
    fn text_dump() {
        let text = build_standard_lp(&fixtures::disjoint_sets(2, 1)).to_text();
        assert_eq!(
            text,
            "maximize 1 1\nbounds 1 0 1\nbounds 2 0 1\ndegree 1: 1 x1 <= 1\ndegree 2: 1 x2 <= 1\n"
        );
    }

    #[test]
    fn variant_names() {
        assert_eq!(
            "standard".parse::<GapVariant>().unwrap(),
            GapVariant::Standard
        );
        assert_eq!(
            "intersecting".parse::<GapVariant>().unwrap(),
            GapVariant::Intersecting
        );
        assert!("kernel".parse::<GapVariant>().is_err());
    }
}
