//! Closed convex sets of mass functions and their lower/upper previsions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lp::{self, Constraint, LinearProgram, LpStatus, Relation};
use crate::space::{dot, FiniteSpace, Gamble, MassFunction, TOL};

#[derive(Debug, Clone, PartialEq)]
pub enum Representation {
    /// A single mass function: a linear prevision.
    Linear(MassFunction),
    /// Convex hull of finitely many mass functions.
    Vertices(Vec<MassFunction>),
    /// Reachable probability intervals on the elements.
    Intervals { lower: Vec<f64>, upper: Vec<f64> },
    /// Linear constraints on the probabilities. The simplex constraints
    /// (non-negativity and unit sum) are always implied.
    Polytope(Vec<Constraint>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CredalSet {
    space: Arc<FiniteSpace>,
    rep: Representation,
}

impl CredalSet {
    pub fn linear(mass: MassFunction) -> Self {
        Self { space: mass.space().clone(), rep: Representation::Linear(mass) }
    }

    pub fn vertices(space: Arc<FiniteSpace>, vertices: Vec<MassFunction>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidCredalSet("no vertices".into()));
        }
        for v in &vertices {
            space.ensure_same(v.space())?;
        }
        Ok(Self { space, rep: Representation::Vertices(vertices) })
    }

    pub fn intervals(space: Arc<FiniteSpace>, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != space.len() || upper.len() != space.len() {
            return Err(Error::LengthMismatch {
                space: space.name().to_string(),
                expected: space.len(),
                found: lower.len().max(upper.len()),
            });
        }
        if !reachability_check(&lower, &upper)? {
            return Err(Error::Unreachable(format!("lower {lower:?}, upper {upper:?}")));
        }
        Ok(Self { space, rep: Representation::Intervals { lower, upper } })
    }

    pub fn polytope(space: Arc<FiniteSpace>, constraints: Vec<Constraint>) -> Result<Self> {
        let set = Self { space, rep: Representation::Polytope(constraints) };
        // Feasibility: minimise the zero objective.
        set.polytope_lp(vec![0.0; set.space.len()])?;
        Ok(set)
    }

    /// Vacuous credal set: every mass function on the space.
    pub fn vacuous(space: Arc<FiniteSpace>) -> Self {
        let all: Vec<usize> = (0..space.len()).collect();
        Self::vacuous_on(space, &all).expect("space is non-empty")
    }

    /// All mass functions concentrated on `members`.
    pub fn vacuous_on(space: Arc<FiniteSpace>, members: &[usize]) -> Result<Self> {
        let vertices = members.iter().map(|&i| MassFunction::degenerate(space.clone(), i)).collect();
        Self::vertices(space, vertices)
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn is_linear(&self) -> bool {
        matches!(self.rep, Representation::Linear(_))
    }

    /// Explicit extreme-point list, when the representation carries one.
    pub fn explicit_vertices(&self) -> Option<Vec<&MassFunction>> {
        match &self.rep {
            Representation::Linear(m) => Some(vec![m]),
            Representation::Vertices(vs) => Some(vs.iter().collect()),
            _ => None,
        }
    }

    /// Lower prevision of `f` together with a mass function attaining it.
    pub fn lower_with_argmin(&self, f: &Gamble) -> Result<(f64, Vec<f64>)> {
        self.space.ensure_same(f.space())?;
        self.lower_values(f.values())
    }

    pub(crate) fn lower_values(&self, f: &[f64]) -> Result<(f64, Vec<f64>)> {
        match &self.rep {
            Representation::Linear(m) => Ok((dot(m.probs(), f), m.probs().to_vec())),
            Representation::Vertices(vs) => {
                let mut best = (f64::INFINITY, 0);
                for (k, v) in vs.iter().enumerate() {
                    let e = dot(v.probs(), f);
                    if e < best.0 {
                        best = (e, k);
                    }
                }
                Ok((best.0, vs[best.1].probs().to_vec()))
            }
            Representation::Intervals { lower, upper } => {
                let p = interval_argmin(lower, upper, f);
                Ok((dot(&p, f), p))
            }
            Representation::Polytope(_) => {
                let sol = self.polytope_lp(f.to_vec())?;
                Ok((sol.0, sol.1))
            }
        }
    }

    pub fn lower(&self, f: &Gamble) -> Result<f64> {
        Ok(self.lower_with_argmin(f)?.0)
    }

    pub fn upper(&self, f: &Gamble) -> Result<f64> {
        Ok(-self.lower(&-f)?)
    }

    pub fn lower_prob(&self, members: &[usize]) -> Result<f64> {
        self.lower(&Gamble::indicator(self.space.clone(), members))
    }

    pub fn upper_prob(&self, members: &[usize]) -> Result<f64> {
        self.upper(&Gamble::indicator(self.space.clone(), members))
    }

    /// Minimum and maximum probability of one element over the set.
    pub fn local_bounds(&self, state: usize) -> Result<(f64, f64)> {
        if let Representation::Intervals { lower, upper } = &self.rep {
            return Ok((lower[state], upper[state]));
        }
        Ok((self.lower_prob(&[state])?, self.upper_prob(&[state])?))
    }

    /// Exact minimum of `p(num) / p(den)` over the set; `den` must have
    /// strictly positive probability throughout.
    pub fn min_prob_ratio(&self, num: usize, den: usize) -> Result<f64> {
        match &self.rep {
            Representation::Linear(m) => Ok(m.prob(num) / m.prob(den)),
            Representation::Vertices(vs) => {
                Ok(vs.iter().map(|v| v.prob(num) / v.prob(den)).fold(f64::INFINITY, f64::min))
            }
            // Reachable intervals are 2-monotone, so the lower bound of one
            // element and the upper bound of another are jointly attained.
            Representation::Intervals { lower, upper } => Ok(lower[num] / upper[den]),
            Representation::Polytope(cs) => {
                let n = self.space.len();
                let mut numerator = vec![0.0; n];
                numerator[num] = 1.0;
                let mut denominator = vec![0.0; n];
                denominator[den] = 1.0;
                let mut constraints = cs.clone();
                constraints.push(Constraint::new(vec![1.0; n], Relation::Eq, 1.0));
                let fp = lp::FractionalProgram {
                    numerator: lp::Affine::linear(numerator),
                    denominator: lp::Affine::linear(denominator),
                    constraints,
                };
                Ok(lp::min_ratio(&fp)?.value)
            }
        }
    }

    /// Every extreme point, for representations that allow enumeration.
    /// Interval sets are enumerated through the greedy allocation for each
    /// ordering of the elements, so `cap` bounds `n!`.
    pub fn extreme_points(&self, cap: u128) -> Result<Vec<MassFunction>> {
        match &self.rep {
            Representation::Linear(m) => Ok(vec![m.clone()]),
            Representation::Vertices(vs) => Ok(vs.clone()),
            Representation::Intervals { lower, upper } => {
                let n = lower.len();
                let count = (1..=n as u128).product::<u128>();
                if count > cap {
                    return Err(Error::CapExceeded { count, cap });
                }
                let mut order: Vec<usize> = (0..n).collect();
                let mut points: Vec<Vec<f64>> = Vec::new();
                loop {
                    // Rank each element by its position in `order`.
                    let mut rank = vec![0.0; n];
                    for (k, &i) in order.iter().enumerate() {
                        rank[i] = k as f64;
                    }
                    let p = interval_argmin(lower, upper, &rank);
                    if !points.iter().any(|q| q.iter().zip(&p).all(|(a, b)| (a - b).abs() <= TOL)) {
                        points.push(p);
                    }
                    if !next_permutation(&mut order) {
                        break;
                    }
                }
                points.into_iter().map(|p| MassFunction::with_tolerance(self.space.clone(), p, TOL)).collect()
            }
            Representation::Polytope(_) => Err(Error::InvalidCredalSet(
                "vertex enumeration of a constraint polytope is not supported".into(),
            )),
        }
    }

    fn polytope_lp(&self, objective: Vec<f64>) -> Result<(f64, Vec<f64>)> {
        let Representation::Polytope(cs) = &self.rep else {
            unreachable!("polytope_lp on a non-polytope representation");
        };
        let n = self.space.len();
        let mut program = LinearProgram::minimize(objective)?;
        for c in cs {
            program.push(c.clone())?;
        }
        program.push(Constraint::new(vec![1.0; n], Relation::Eq, 1.0))?;
        let sol = lp::solve_lp(&program);
        match sol.status {
            LpStatus::Optimal => Ok((sol.objective, sol.x)),
            LpStatus::Infeasible => Err(Error::InfeasiblePolytope),
            LpStatus::Unbounded => Err(Error::Unbounded),
        }
    }
}

/// Lower expectation over probability intervals: start from the lower
/// bounds and hand the free mass to the smallest values of `f` first.
fn interval_argmin(lower: &[f64], upper: &[f64], f: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..f.len()).collect();
    order.sort_by(|&a, &b| f[a].total_cmp(&f[b]).then(a.cmp(&b)));
    let mut p = lower.to_vec();
    let mut free = 1.0 - lower.iter().sum::<f64>();
    for i in order {
        if free <= 0.0 {
            break;
        }
        let add = (upper[i] - lower[i]).min(free);
        p[i] += add;
        free -= add;
    }
    p
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Whether probability intervals are consistent and tight:
/// `Σl ≤ 1 ≤ Σu`, and for every element `l(z) + Σ_{z'≠z} u(z') ≥ 1` and
/// `u(z) + Σ_{z'≠z} l(z') ≤ 1`.
pub fn reachability_check(lower: &[f64], upper: &[f64]) -> Result<bool> {
    if lower.len() != upper.len() || lower.is_empty() {
        return Err(Error::InvalidCredalSet("interval bounds must be non-empty and of equal length".into()));
    }
    for (i, (&l, &u)) in lower.iter().zip(upper).enumerate() {
        if !(l.is_finite() && u.is_finite()) || l < 0.0 || u > 1.0 || l > u {
            return Err(Error::InvalidCredalSet(format!("malformed interval [{l}, {u}] at index {i}")));
        }
    }
    let sl: f64 = lower.iter().sum();
    let su: f64 = upper.iter().sum();
    if sl > 1.0 + TOL || su < 1.0 - TOL {
        return Ok(false);
    }
    for i in 0..lower.len() {
        if lower[i] + (su - upper[i]) < 1.0 - TOL {
            return Ok(false);
        }
        if upper[i] + (sl - lower[i]) > 1.0 + TOL {
            return Ok(false);
        }
    }
    Ok(true)
}
