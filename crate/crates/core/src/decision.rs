//! Strict preference and maximality.

use crate::coherence::LowerPrevision;
use crate::error::{Error, Result};
use crate::space::{Gamble, TOL};

/// `a` is strictly preferred to `b` iff `P(f_a - f_b) > 0`, with no slack.
pub fn strict_preference<P: LowerPrevision>(prevision: &P, fa: &Gamble, fb: &Gamble) -> Result<bool> {
    let diff = fa.zip_with(fb, |a, b| a - b)?;
    Ok(prevision.lower(&diff)? > 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Equivalent,
    Incomparable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Maximality {
    pub maximal: Vec<String>,
    /// Each unordered pair of maximal actions, in input order.
    pub pairs: Vec<(String, String, Comparison)>,
}

pub fn maximal_actions<P: LowerPrevision>(prevision: &P, rewards: &[(String, Gamble)]) -> Result<Maximality> {
    if rewards.is_empty() {
        return Err(Error::EmptyActions);
    }
    let n = rewards.len();
    let mut prefers = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a != b {
                prefers[a][b] = strict_preference(prevision, &rewards[a].1, &rewards[b].1)?;
            }
        }
    }
    let survivors: Vec<usize> = (0..n).filter(|&a| (0..n).all(|b| !prefers[b][a])).collect();
    let mut pairs = Vec::new();
    for (k, &a) in survivors.iter().enumerate() {
        for &b in &survivors[k + 1..] {
            let diff = rewards[a].1.zip_with(&rewards[b].1, |x, y| x - y)?;
            let lo = prevision.lower(&diff)?;
            let hi = prevision.upper(&diff)?;
            let kind = if lo.abs() <= TOL && hi.abs() <= TOL {
                Comparison::Equivalent
            } else {
                Comparison::Incomparable
            };
            pairs.push((rewards[a].0.clone(), rewards[b].0.clone(), kind));
        }
    }
    Ok(Maximality { maximal: survivors.iter().map(|&a| rewards[a].0.clone()).collect(), pairs })
}
