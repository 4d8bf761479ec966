//! Dense two-phase primal simplex over exact rationals with Bland's rule.

use num_traits::{One, Signed, Zero};

use super::{LinearProgram, LpSolution, LpStatus, Relation};
use crate::{Rational, Result};

/// Internal row `a·x' (= after slack/artificial) = rhs` with `rhs ≥ 0`.
struct Row {
    /// Sign applied to the original row to make the right-hand side
    /// non-negative.
    flip: bool,
    /// Index of the original constraint, `None` for upper-bound rows.
    source: Option<usize>,
    /// Column whose reduced cost yields this row's multiplier.
    unit_column: usize,
}

struct Tableau {
    a: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    d: Vec<Rational>,
    z: Rational,
    /// Columns allowed to enter the basis.
    eligible: Vec<bool>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.a[r][c].clone();
        for v in self.a[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.a[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for (v, pv) in self.a[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.d[c].is_zero() {
            let f = self.d[c].clone();
            for (v, pv) in self.d.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.z += &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Sets reduced costs for the cost vector `cost` under the current basis.
    fn price(&mut self, cost: &[Rational]) {
        self.d = cost.to_vec();
        self.z = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (v, a) in self.d.iter_mut().zip(&self.a[i]) {
                *v -= cb * a;
            }
            self.z += cb * &self.rhs[i];
        }
    }

    /// Runs to optimality; returns `false` if unbounded.
    fn optimize(&mut self) -> bool {
        loop {
            let Some(c) = (0..self.d.len()).find(|&j| self.eligible[j] && self.d[j].is_positive())
            else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.a.len() {
                if self.a[i][c].is_positive() {
                    let ratio = &self.rhs[i] / &self.a[i][c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn remove_row(&mut self, r: usize) {
        self.a.remove(r);
        self.rhs.remove(r);
        self.basis.remove(r);
    }
}

/// Solves `lp` exactly. Optimal solutions carry a dual vector that
/// [`certify`] accepts.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    let n = lp.num_vars();
    let lower: Vec<&Rational> = lp.bounds().iter().map(|b| &b.lower).collect();

    // (dense coefficients over x', relation, rhs, source)
    let mut raw: Vec<(Vec<Rational>, Relation, Rational, Option<usize>)> = Vec::new();
    for (idx, c) in lp.constraints().iter().enumerate() {
        let mut dense = vec![Rational::zero(); n];
        let mut shift = Rational::zero();
        for (j, a) in &c.coefficients {
            dense[*j] = a.clone();
            shift += a * lower[*j];
        }
        raw.push((dense, c.relation, &c.rhs - shift, Some(idx)));
    }
    for (j, b) in lp.bounds().iter().enumerate() {
        if let Some(u) = &b.upper {
            let mut dense = vec![Rational::zero(); n];
            dense[j] = Rational::one();
            raw.push((dense, Relation::Le, u - &b.lower, None));
        }
    }

    let m = raw.len();
    let slack_count = raw.iter().filter(|r| r.1 == Relation::Le).count();
    let mut rows_meta = Vec::with_capacity(m);
    let mut layout = Vec::with_capacity(m);
    let (mut next_slack, mut next_art) = (n, n + slack_count);
    for (_, rel, rhs, source) in &raw {
        let flip = rhs.is_negative();
        let slack = (*rel == Relation::Le).then(|| {
            next_slack += 1;
            next_slack - 1
        });
        // A row needs an artificial unless its slack enters with +1.
        let art = (slack.is_none() || flip).then(|| {
            next_art += 1;
            next_art - 1
        });
        let unit_column = art.or(slack).expect("row has a slack or an artificial");
        rows_meta.push(Row {
            flip,
            source: *source,
            unit_column,
        });
        layout.push((slack, art));
    }
    let width = next_art;
    let mut a = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for ((dense, _, b, _), (meta, (slack, art))) in
        raw.into_iter().zip(rows_meta.iter().zip(&layout))
    {
        let sign = if meta.flip {
            -Rational::one()
        } else {
            Rational::one()
        };
        let mut row: Vec<Rational> = dense.into_iter().map(|v| v * &sign).collect();
        row.resize(width, Rational::zero());
        if let Some(s) = slack {
            row[*s] = sign.clone();
        }
        if let Some(t) = art {
            row[*t] = Rational::one();
        }
        a.push(row);
        rhs.push(b * &sign);
        basis.push(meta.unit_column);
    }

    let artificial = |j: usize| j >= n + slack_count;
    let mut t = Tableau {
        a,
        rhs,
        basis,
        d: Vec::new(),
        z: Rational::zero(),
        eligible: vec![true; width],
    };

    if width > n + slack_count {
        let cost: Vec<Rational> = (0..width)
            .map(|j| {
                if artificial(j) {
                    -Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        t.price(&cost);
        t.optimize();
        if t.z.is_negative() {
            return Ok(infeasible(LpStatus::Infeasible));
        }
        let mut r = 0;
        while r < t.a.len() {
            if artificial(t.basis[r]) {
                match (0..n + slack_count).find(|&j| !t.a[r][j].is_zero()) {
                    Some(c) => t.pivot(r, c),
                    None => {
                        t.remove_row(r);
                        rows_meta.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        for j in n + slack_count..width {
            t.eligible[j] = false;
        }
    }

    let mut cost = vec![Rational::zero(); width];
    cost[..n].clone_from_slice(lp.objective());
    t.price(&cost);
    if !t.optimize() {
        return Ok(infeasible(LpStatus::Unbounded));
    }

    let mut values: Vec<Rational> = lower.iter().map(|&l| l.clone()).collect();
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            values[b] += &t.rhs[i];
        }
    }
    let mut duals = vec![Rational::zero(); lp.constraints().len()];
    for meta in &rows_meta {
        if let Some(src) = meta.source {
            let y = -t.d[meta.unit_column].clone();
            duals[src] = if meta.flip { -y } else { y };
        }
    }
    let objective_value = lp.objective_value(&values);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        values,
        objective_value,
        duals,
    })
}

fn infeasible(status: LpStatus) -> LpSolution {
    LpSolution {
        status,
        values: Vec::new(),
        objective_value: Rational::zero(),
        duals: Vec::new(),
    }
}

/// Verifies an optimal solution: primal feasibility, the reported objective,
/// dual sign conditions, and a dual objective equal to the primal one.
///
/// Bound multipliers are recovered from the row duals as
/// `z − r = c − Aᵀy` with `z, r ≥ 0` minimal.
pub fn certify(lp: &LinearProgram, sol: &LpSolution) -> std::result::Result<(), String> {
    if sol.status != LpStatus::Optimal {
        return Err(format!("status is {:?}", sol.status));
    }
    if !lp.is_feasible(&sol.values) {
        return Err("primal solution violates a constraint".into());
    }
    if lp.objective_value(&sol.values) != sol.objective_value {
        return Err("objective value does not match the solution".into());
    }
    if sol.duals.len() != lp.constraints().len() {
        return Err("dual vector has the wrong length".into());
    }
    let mut reduced: Vec<Rational> = lp.objective().to_vec();
    let mut dual_value = Rational::zero();
    for (c, y) in lp.constraints().iter().zip(&sol.duals) {
        if c.relation == Relation::Le && y.is_negative() {
            return Err("negative multiplier on an inequality row".into());
        }
        for (j, a) in &c.coefficients {
            reduced[*j] -= a * y;
        }
        dual_value += &c.rhs * y;
    }
    for (d, b) in reduced.iter().zip(lp.bounds()) {
        if d.is_positive() {
            match &b.upper {
                Some(u) => dual_value += d * u,
                None => return Err("dual infeasible on a variable without upper bound".into()),
            }
        } else {
            dual_value += d * &b.lower;
        }
    }
    if dual_value != sol.objective_value {
        return Err(format!(
            "dual value {dual_value} differs from primal value {}",
            sol.objective_value
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::RowLabel;
    use super::*;
    use crate::{int, ratio};

    fn lp(obj: &[i64]) -> LinearProgram {
        LinearProgram::new(obj.iter().map(|&v| int(v)).collect())
    }

    fn row(coeffs: &[(usize, i64)]) -> Vec<(usize, Rational)> {
        coeffs.iter().map(|&(j, a)| (j, int(a))).collect()
    }

    #[test]
    fn textbook_maximum() {
        let mut p = lp(&[3, 5]);
        p.add_constraint(row(&[(0, 1)]), Relation::Le, int(4), RowLabel::Box(0))
            .unwrap();
        p.add_constraint(row(&[(1, 2)]), Relation::Le, int(12), RowLabel::Box(1))
            .unwrap();
        p.add_constraint(
            row(&[(0, 3), (1, 2)]),
            Relation::Le,
            int(18),
            RowLabel::Degree(0),
        )
        .unwrap();
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.objective_value, int(36));
        assert_eq!(s.values, vec![int(2), int(6)]);
        certify(&p, &s).unwrap();
    }

    #[test]
    fn equality_and_negative_rhs() {
        let mut p = lp(&[1, 1]);
        p.add_constraint(
            row(&[(0, 1), (1, 1)]),
            Relation::Eq,
            int(3),
            RowLabel::Degree(0),
        )
        .unwrap();
        p.add_constraint(row(&[(0, -1)]), Relation::Le, int(-2), RowLabel::Box(0))
            .unwrap();
        p.set_bounds(1, ratio(1, 2), None).unwrap();
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.objective_value, int(3));
        assert!(s.values[0] >= int(2));
        certify(&p, &s).unwrap();
    }

    #[test]
    fn redundant_equalities() {
        let mut p = lp(&[1, 2]);
        p.add_constraint(
            row(&[(0, 1), (1, 1)]),
            Relation::Eq,
            int(1),
            RowLabel::Degree(0),
        )
        .unwrap();
        p.add_constraint(
            row(&[(0, 2), (1, 2)]),
            Relation::Eq,
            int(2),
            RowLabel::Degree(1),
        )
        .unwrap();
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.objective_value, int(2));
        certify(&p, &s).unwrap();
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut p = lp(&[1]);
        p.add_constraint(row(&[(0, 1)]), Relation::Le, int(-1), RowLabel::Box(0))
            .unwrap();
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Infeasible);
        let q = lp(&[1]);
        assert_eq!(solve_lp(&q).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn certify_rejects_wrong_claims() {
        let mut p = lp(&[1, 1]);
        p.set_bounds(0, int(0), Some(int(1))).unwrap();
        p.set_bounds(1, int(0), Some(int(1))).unwrap();
        p.add_constraint(
            row(&[(0, 1), (1, 1)]),
            Relation::Le,
            int(1),
            RowLabel::Degree(0),
        )
        .unwrap();
        let good = solve_lp(&p).unwrap();
        certify(&p, &good).unwrap();
        let mut weak = good.clone();
        weak.duals = vec![int(2)];
        assert!(certify(&p, &weak).is_err());
        let mut wrong = good;
        wrong.values = vec![int(1), int(1)];
        assert!(certify(&p, &wrong).is_err());
    }
}
