use crate::error::{Error, Result};

use super::simplex::{solve_lp, Constraint, LinearProgram, LpStatus, Relation};

/// `coeffs · p + constant`.
#[derive(Debug, Clone, PartialEq)]
pub struct Affine {
    pub coeffs: Vec<f64>,
    pub constant: f64,
}

impl Affine {
    pub fn linear(coeffs: Vec<f64>) -> Self {
        Self { coeffs, constant: 0.0 }
    }

    pub fn eval(&self, p: &[f64]) -> f64 {
        self.coeffs.iter().zip(p).map(|(a, v)| a * v).sum::<f64>() + self.constant
    }
}

/// Minimise `numerator(p) / denominator(p)` over `{p ≥ 0 : constraints}`.
/// The denominator must be strictly positive on the feasible set.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalProgram {
    pub numerator: Affine,
    pub denominator: Affine,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioOptimum {
    pub value: f64,
    pub argument: Vec<f64>,
}

/// Charnes–Cooper: with `y = t·p` and `t > 0` normalised so that the
/// denominator equals one, the ratio becomes a linear objective.
pub fn min_ratio(fp: &FractionalProgram) -> Result<RatioOptimum> {
    let n = fp.numerator.coeffs.len();
    if fp.denominator.coeffs.len() != n {
        return Err(Error::InvalidCredalSet("numerator and denominator dimensions differ".into()));
    }
    // Variables: y_0..y_{n-1}, t.
    let mut objective = fp.numerator.coeffs.clone();
    objective.push(fp.numerator.constant);
    let mut lp = LinearProgram::minimize(objective)?;
    for c in &fp.constraints {
        let mut coeffs = c.coeffs.clone();
        coeffs.push(-c.rhs);
        lp.push(Constraint::new(coeffs, c.relation, 0.0))?;
    }
    let mut norm = fp.denominator.coeffs.clone();
    norm.push(fp.denominator.constant);
    lp.push(Constraint::new(norm, Relation::Eq, 1.0))?;

    let sol = solve_lp(&lp);
    match sol.status {
        LpStatus::Infeasible => return Err(Error::InfeasiblePolytope),
        LpStatus::Unbounded => return Err(Error::Unbounded),
        LpStatus::Optimal => {}
    }
    let t = sol.x[n];
    if t <= 1e-12 {
        // Only reachable for unbounded polytopes, which callers never pass.
        return Err(Error::Unbounded);
    }
    let argument: Vec<f64> = sol.x[..n].iter().map(|y| y / t).collect();
    let value = fp.numerator.eval(&argument) / fp.denominator.eval(&argument);
    Ok(RatioOptimum { value, argument })
}
