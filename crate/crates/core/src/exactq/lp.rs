//! Dense two-phase simplex over the rationals.
//!
//! Free variables are split as `x = p - q`. Pivoting follows Bland's rule
//! in both phases, so the method terminates on degenerate problems.

use num_traits::{One, Signed, Zero};

use super::{QVec, Rat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, point: QVec },
}

impl LpOutcome {
    pub fn point(&self) -> Option<&QVec> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RowKind {
    Ge,
    Eq,
}

/// A system of constraints `a·x ≥ b` and `a·x = b` over `x ∈ ℚⁿ`.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    dim: usize,
    rows: Vec<(QVec, Rat, RowKind)>,
}

impl LinearProgram {
    pub fn new(dim: usize) -> Self {
        LinearProgram {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ge(&mut self, a: QVec, b: Rat) -> Result<&mut Self> {
        Error::check_dim(self.dim, a.len())?;
        self.rows.push((a, b, RowKind::Ge));
        Ok(self)
    }

    pub fn eq(&mut self, a: QVec, b: Rat) -> Result<&mut Self> {
        Error::check_dim(self.dim, a.len())?;
        self.rows.push((a, b, RowKind::Eq));
        Ok(self)
    }

    pub fn optimize(&self, objective: &[Rat], sense: Sense) -> Result<LpOutcome> {
        Error::check_dim(self.dim, objective.len())?;
        let cost: QVec = match sense {
            Sense::Minimize => objective.to_vec(),
            Sense::Maximize => objective.iter().map(|c| -c).collect(),
        };
        let outcome = Tableau::build(self).solve(&cost);
        Ok(match (outcome, sense) {
            (LpOutcome::Optimal { value, point }, Sense::Maximize) => LpOutcome::Optimal {
                value: -value,
                point,
            },
            (o, _) => o,
        })
    }

    /// Some point satisfying every constraint, or `None` if there is none.
    pub fn feasible_point(&self) -> Option<QVec> {
        let zero = vec![Rat::zero(); self.dim];
        match Tableau::build(self).solve(&zero) {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

/// Optimizes `objective` over `{x : a·x ≥ b for every (a, b)}`.
pub fn lp_optimize(constraints: &[(QVec, Rat)], objective: &[Rat], sense: Sense) -> Result<LpOutcome> {
    let mut lp = LinearProgram::new(objective.len());
    for (a, b) in constraints {
        lp.ge(a.clone(), b.clone())?;
    }
    lp.optimize(objective, sense)
}

struct Tableau {
    n: usize,
    /// Columns: p (n), q (n), slacks, artificials; last entry is the rhs.
    rows: Vec<QVec>,
    basis: Vec<usize>,
    n_struct: usize,
    n_cols: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.dim;
        let n_slack = lp.rows.iter().filter(|r| r.2 == RowKind::Ge).count();
        let n_struct = 2 * n + n_slack;
        // a row needs an artificial unless its slack can start in the basis
        let needs_art: Vec<bool> = lp
            .rows
            .iter()
            .map(|(_, b, k)| *k == RowKind::Eq || b.is_positive())
            .collect();
        let n_art = needs_art.iter().filter(|&&x| x).count();
        let n_cols = n_struct + n_art;

        let mut rows = Vec::with_capacity(lp.rows.len());
        let mut basis = Vec::with_capacity(lp.rows.len());
        let mut slack = 2 * n;
        let mut art = n_struct;
        for ((a, b, kind), &art_needed) in lp.rows.iter().zip(&needs_art) {
            let mut row = vec![Rat::zero(); n_cols + 1];
            // a·p - a·q - s = b, negated when b ≤ 0 so that the rhs is ≥ 0
            let flip = !b.is_positive();
            for (j, aj) in a.iter().enumerate() {
                if aj.is_zero() {
                    continue;
                }
                let v = if flip { -aj } else { aj.clone() };
                row[n + j] = -v.clone();
                row[j] = v;
            }
            row[n_cols] = if flip { -b } else { b.clone() };
            if *kind == RowKind::Ge {
                row[slack] = if flip { Rat::one() } else { -Rat::one() };
                if !art_needed {
                    basis.push(slack);
                }
                slack += 1;
            }
            if art_needed {
                row[art] = Rat::one();
                basis.push(art);
                art += 1;
            }
            rows.push(row);
        }
        Tableau {
            n,
            rows,
            basis,
            n_struct,
            n_cols,
        }
    }

    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.n_cols]
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut QVec) {
        let inv = Rat::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let prow = self.rows[r].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &prow[j];
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for &j in &nz {
                obj[j] -= &f * &prow[j];
            }
        }
        self.basis[r] = c;
    }

    /// Reduced-cost row for `cost` (indexed by column, rhs slot holds -z).
    fn reduced_costs(&self, cost: &[Rat]) -> QVec {
        let mut obj: QVec = cost.to_vec();
        obj.resize(self.n_cols + 1, Rat::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, t) in obj.iter_mut().zip(&self.rows[i]) {
                if !t.is_zero() {
                    *o -= cb * t;
                }
            }
        }
        obj
    }

    /// Minimizes with Bland's rule over the columns `< allowed`.
    /// Returns false when the objective is unbounded below.
    fn run(&mut self, obj: &mut QVec, allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let t = &self.rows[i][enter];
                if !t.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / t;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, enter, obj);
        }
    }

    fn solve(mut self, cost: &[Rat]) -> LpOutcome {
        let n_cols = self.n_cols;
        if n_cols > self.n_struct {
            let mut phase1 = vec![Rat::zero(); n_cols];
            for c in phase1.iter_mut().skip(self.n_struct) {
                *c = Rat::one();
            }
            let mut obj = self.reduced_costs(&phase1);
            self.run(&mut obj, n_cols);
            let infeasibility: Rat = self
                .basis
                .iter()
                .enumerate()
                .filter(|(_, &b)| b >= self.n_struct)
                .map(|(i, _)| self.rhs(i).clone())
                .sum();
            if infeasibility.is_positive() {
                return LpOutcome::Infeasible;
            }
            // drive degenerate artificials out of the basis
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.n_struct {
                    match (0..self.n_struct).find(|&j| !self.rows[i][j].is_zero()) {
                        Some(j) => self.pivot(i, j, &mut obj),
                        None => {
                            self.rows.remove(i);
                            self.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }

        let mut full_cost = vec![Rat::zero(); n_cols];
        for (j, c) in cost.iter().enumerate() {
            full_cost[j] = c.clone();
            full_cost[self.n + j] = -c.clone();
        }
        let mut obj = self.reduced_costs(&full_cost);
        if !self.run(&mut obj, self.n_struct) {
            return LpOutcome::Unbounded;
        }
        let mut point = vec![Rat::zero(); self.n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                point[b] += self.rhs(i);
            } else if b < 2 * self.n {
                point[b - self.n] -= self.rhs(i);
            }
        }
        let value = super::dot(cost, &point);
        LpOutcome::Optimal { value, point }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{dot, qvec, rat, ratio};

    fn interval(lo: i64, hi: i64) -> Vec<(QVec, Rat)> {
        vec![(qvec(&[1]), rat(lo)), (qvec(&[-1]), rat(-hi))]
    }

    #[test]
    fn interval_endpoint() {
        let out = lp_optimize(&interval(0, 1), &qvec(&[1]), Sense::Maximize).unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: rat(1),
                point: qvec(&[1])
            }
        );
        let out = lp_optimize(&interval(0, 1), &qvec(&[1]), Sense::Minimize).unwrap();
        assert_eq!(out.value(), Some(&rat(0)));
    }

    #[test]
    fn half_line_is_unbounded() {
        let out = lp_optimize(&[(qvec(&[1]), rat(0))], &qvec(&[1]), Sense::Maximize).unwrap();
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn empty_interval_is_infeasible() {
        let cons = vec![(qvec(&[1]), rat(1)), (qvec(&[-1]), rat(0))];
        let out = lp_optimize(&cons, &qvec(&[1]), Sense::Maximize).unwrap();
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn dimension_mismatch() {
        let cons = vec![(qvec(&[1, 2]), rat(1))];
        assert!(lp_optimize(&cons, &qvec(&[1]), Sense::Maximize).is_err());
    }

    #[test]
    fn equalities_and_rational_vertex() {
        // x + y = 1, 3x - y >= 0, maximize -x
        let mut lp = LinearProgram::new(2);
        lp.eq(qvec(&[1, 1]), rat(1)).unwrap();
        lp.ge(qvec(&[3, -1]), rat(0)).unwrap();
        let out = lp.optimize(&qvec(&[-1, 0]), Sense::Maximize).unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: ratio(-1, 4),
                point: vec![ratio(1, 4), ratio(3, 4)]
            }
        );
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.eq(qvec(&[1, 1]), rat(2)).unwrap();
        lp.eq(qvec(&[2, 2]), rat(4)).unwrap();
        lp.ge(qvec(&[1, 0]), rat(0)).unwrap();
        lp.ge(qvec(&[0, 1]), rat(0)).unwrap();
        let out = lp.optimize(&qvec(&[1, 0]), Sense::Maximize).unwrap();
        assert_eq!(out.value(), Some(&rat(2)));
    }

    #[test]
    fn degenerate_cycling_prone_problem() {
        // Beale's example, which cycles under the textbook rule.
        let mut lp = LinearProgram::new(4);
        lp.ge(vec![ratio(-1, 4), rat(60), ratio(1, 25), rat(-9)], rat(0)).unwrap();
        lp.ge(vec![ratio(-1, 2), rat(90), ratio(1, 50), rat(-3)], rat(0)).unwrap();
        lp.ge(qvec(&[0, 0, -1, 0]), rat(-1)).unwrap();
        for i in 0..4 {
            let mut e = qvec(&[0, 0, 0, 0]);
            e[i] = rat(1);
            lp.ge(e, rat(0)).unwrap();
        }
        let obj = vec![ratio(3, 4), rat(-150), ratio(1, 50), rat(-6)];
        let out = lp.optimize(&obj, Sense::Maximize).unwrap();
        assert_eq!(out.value(), Some(&ratio(1, 20)));
        assert_eq!(dot(&obj, out.point().unwrap()), ratio(1, 20));
    }
}
