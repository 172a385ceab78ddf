use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-11;
const FEAS_EPS: f64 = 1e-9;
const MAX_PIVOTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }

    pub fn holds(self, lhs: f64, rhs: f64, tol: f64) -> bool {
        match self {
            Relation::Le => lhs <= rhs + tol,
            Relation::Ge => lhs >= rhs - tol,
            Relation::Eq => (lhs - rhs).abs() <= tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn new(coeffs: Vec<f64>, relation: Relation, rhs: f64) -> Self {
        Self { coeffs, relation, rhs }
    }

    pub fn lhs(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum()
    }
}

/// Minimise `objective · x` subject to linear constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    objective: Vec<f64>,
    constraints: Vec<Constraint>,
    nonnegative: Vec<bool>,
}

impl LinearProgram {
    /// All variables start out non-negative.
    pub fn minimize(objective: Vec<f64>) -> Result<Self> {
        if objective.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidCredalSet("non-finite objective".into()));
        }
        let n = objective.len();
        Ok(Self { objective, constraints: Vec::new(), nonnegative: vec![true; n] })
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.nonnegative[var] = false;
        self
    }

    pub fn push(&mut self, c: Constraint) -> Result<&mut Self> {
        if c.coeffs.len() != self.objective.len() {
            return Err(Error::InvalidCredalSet(format!(
                "constraint has {} coefficients, program has {} variables",
                c.coeffs.len(),
                self.objective.len()
            )));
        }
        if !c.rhs.is_finite() || c.coeffs.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidCredalSet("non-finite constraint".into()));
        }
        self.constraints.push(c);
        Ok(self)
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn nonnegative(&self) -> &[bool] {
        &self.nonnegative
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective value; meaningful only when `status` is `Optimal`.
    pub objective: f64,
    pub x: Vec<f64>,
    /// One multiplier per constraint of the original program: `≥` rows carry
    /// non-negative duals, `≤` rows non-positive, `=` rows free.
    pub duals: Vec<f64>,
}

impl LpSolution {
    fn failed(status: LpStatus, n: usize, m: usize) -> Self {
        Self {
            status,
            objective: match status {
                LpStatus::Unbounded => f64::NEG_INFINITY,
                _ => f64::INFINITY,
            },
            x: vec![0.0; n],
            duals: vec![0.0; m],
        }
    }
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = row[c];
            if factor != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= factor * pv;
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[f64], j: usize) -> f64 {
        let mut d = cost[j];
        for (i, row) in self.rows.iter().enumerate() {
            d -= cost[self.basis[i]] * row[j];
        }
        d
    }

    /// Bland's rule: lowest-index improving column enters, ratio ties leave
    /// by lowest basic index.
    fn optimize(&mut self, cost: &[f64], allowed: &[bool]) -> LpStatus {
        for _ in 0..MAX_PIVOTS {
            let entering = (0..self.cols)
                .find(|&j| allowed[j] && !self.basis.contains(&j) && self.reduced_cost(cost, j) < -PIVOT_EPS);
            let Some(c) = entering else {
                return LpStatus::Optimal;
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][c];
                if a > PIVOT_EPS {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((r, best)) => {
                            if ratio < best - 1e-12
                                || ((ratio - best).abs() <= 1e-12 && self.basis[i] < self.basis[r])
                            {
                                Some((i, ratio))
                            } else {
                                Some((r, best))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return LpStatus::Unbounded,
                Some((r, _)) => self.pivot(r, c),
            }
        }
        // Bland's rule cannot cycle; running out of pivots means numerical trouble.
        LpStatus::Optimal
    }
}

/// Dense two-phase primal simplex.
pub fn solve_lp(lp: &LinearProgram) -> LpSolution {
    let n = lp.num_vars();
    let m = lp.constraints.len();

    // Standard-form columns: non-negative vars map to one column, free vars to two.
    let mut col_map: Vec<(usize, f64)> = Vec::new();
    for (j, &nonneg) in lp.nonnegative.iter().enumerate() {
        col_map.push((j, 1.0));
        if !nonneg {
            col_map.push((j, -1.0));
        }
    }
    let n_std = col_map.len();

    let mut signs = vec![1.0; m];
    let mut rels = Vec::with_capacity(m);
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.rhs < 0.0 {
            signs[i] = -1.0;
            rels.push(c.relation.flipped());
        } else {
            rels.push(c.relation);
        }
    }
    let n_slack = rels.iter().filter(|r| **r != Relation::Eq).count();
    let n_art = rels.iter().filter(|r| **r != Relation::Le).count();
    let cols = n_std + n_slack + n_art;

    let mut rows = vec![vec![0.0; cols + 1]; m];
    let mut basis = vec![0; m];
    let mut init_col = vec![0; m];
    let mut is_art = vec![false; cols];
    let (mut next_slack, mut next_art) = (n_std, n_std + n_slack);
    for (i, c) in lp.constraints.iter().enumerate() {
        let row = &mut rows[i];
        for (k, &(j, s)) in col_map.iter().enumerate() {
            row[k] = signs[i] * s * c.coeffs[j];
        }
        row[cols] = signs[i] * c.rhs;
        match rels[i] {
            Relation::Le => {
                row[next_slack] = 1.0;
                basis[i] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -1.0;
                next_slack += 1;
                row[next_art] = 1.0;
                is_art[next_art] = true;
                basis[i] = next_art;
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = 1.0;
                is_art[next_art] = true;
                basis[i] = next_art;
                next_art += 1;
            }
        }
        init_col[i] = basis[i];
    }

    let mut t = Tableau { rows, basis, cols };

    if n_art > 0 {
        let phase1_cost: Vec<f64> = is_art.iter().map(|&a| if a { 1.0 } else { 0.0 }).collect();
        let all = vec![true; cols];
        t.optimize(&phase1_cost, &all);
        let infeas: f64 = (0..t.rows.len()).filter(|&i| is_art[t.basis[i]]).map(|i| t.rhs(i)).sum();
        if infeas > FEAS_EPS {
            return LpSolution::failed(LpStatus::Infeasible, n, m);
        }
        // Drive remaining zero-valued artificials out where possible. A row
        // with no non-artificial entry is redundant; its artificial stays
        // basic at zero and can never leave, since only non-artificial
        // columns enter in phase two. Keeping the row keeps the basis
        // inverse intact for the duals.
        for i in 0..t.rows.len() {
            if is_art[t.basis[i]] {
                if let Some(j) = (0..cols).find(|&j| !is_art[j] && t.rows[i][j].abs() > FEAS_EPS) {
                    t.pivot(i, j);
                }
            }
        }
    }

    let mut cost = vec![0.0; cols];
    for (k, &(j, s)) in col_map.iter().enumerate() {
        cost[k] = s * lp.objective[j];
    }
    let allowed: Vec<bool> = is_art.iter().map(|a| !a).collect();
    if t.optimize(&cost, &allowed) == LpStatus::Unbounded {
        return LpSolution::failed(LpStatus::Unbounded, n, m);
    }

    let mut std_x = vec![0.0; cols];
    for (i, &b) in t.basis.iter().enumerate() {
        std_x[b] = t.rhs(i).max(0.0);
    }
    let mut x = vec![0.0; n];
    for (k, &(j, s)) in col_map.iter().enumerate() {
        x[j] += s * std_x[k];
    }
    let mut duals = vec![0.0; m];
    for (i, dual) in duals.iter_mut().enumerate() {
        *dual = -signs[i] * t.reduced_cost(&cost, init_col[i]);
    }
    let objective = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    LpSolution { status: LpStatus::Optimal, objective, x, duals }
}
