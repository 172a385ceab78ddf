//! Lower previsions as functionals, and a sample-based check of the
//! coherence axioms.

use std::sync::Arc;

use crate::credal_set::CredalSet;
use crate::error::Result;
use crate::space::{FiniteSpace, Gamble, TOL};

/// A lower prevision on all gambles of a finite space.
pub trait LowerPrevision {
    fn domain(&self) -> &Arc<FiniteSpace>;

    fn lower(&self, f: &Gamble) -> Result<f64>;

    fn upper(&self, f: &Gamble) -> Result<f64> {
        Ok(-self.lower(&-f)?)
    }
}

impl LowerPrevision for CredalSet {
    fn domain(&self) -> &Arc<FiniteSpace> {
        self.space()
    }

    fn lower(&self, f: &Gamble) -> Result<f64> {
        CredalSet::lower(self, f)
    }
}

impl<T: LowerPrevision + ?Sized> LowerPrevision for &T {
    fn domain(&self) -> &Arc<FiniteSpace> {
        (**self).domain()
    }

    fn lower(&self, f: &Gamble) -> Result<f64> {
        (**self).lower(f)
    }
}

/// Adapts a closure into a [`LowerPrevision`].
pub struct FnPrevision<F> {
    space: Arc<FiniteSpace>,
    eval: F,
}

impl<F> FnPrevision<F>
where
    F: Fn(&Gamble) -> Result<f64>,
{
    pub fn new(space: Arc<FiniteSpace>, eval: F) -> Self {
        Self { space, eval }
    }
}

impl<F> LowerPrevision for FnPrevision<F>
where
    F: Fn(&Gamble) -> Result<f64>,
{
    fn domain(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    fn lower(&self, f: &Gamble) -> Result<f64> {
        (self.eval)(f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `min f > P(f)`: the prevision accepts a sure loss.
    Bounds { f: usize, min: f64, lower: f64 },
    /// `P(f + g) < P(f) + P(g)`.
    SuperAdditivity { f: usize, g: usize, sum: f64, separate: f64 },
    /// `P(λf) ≠ λ P(f)` for `λ > 0`.
    Homogeneity { f: usize, lambda: f64, scaled: f64, expected: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceReport {
    pub checks: usize,
    pub violation: Option<Violation>,
}

impl CoherenceReport {
    pub fn is_coherent(&self) -> bool {
        self.violation.is_none()
    }
}

fn tol_for(values: &[f64]) -> f64 {
    TOL * (1.0 + values.iter().fold(0.0_f64, |m, v| m.max(v.abs())))
}

/// Checks the bounds, super-additivity (on every ordered pair of the sample)
/// and positive homogeneity (for each positive scalar) axioms. Stops at the
/// first violation and reports its witnesses as sample indices.
pub fn check_coherence<P: LowerPrevision>(
    prevision: &P,
    sample: &[Gamble],
    scalars: &[f64],
) -> Result<CoherenceReport> {
    let values: Vec<f64> = sample.iter().map(|f| prevision.lower(f)).collect::<Result<_>>()?;
    let mut checks = 0;
    let done = |checks, violation| Ok(CoherenceReport { checks, violation: Some(violation) });

    for (i, f) in sample.iter().enumerate() {
        checks += 1;
        if f.min() > values[i] + tol_for(f.values()) {
            return done(checks, Violation::Bounds { f: i, min: f.min(), lower: values[i] });
        }
    }
    for (i, f) in sample.iter().enumerate() {
        for (j, g) in sample.iter().enumerate().skip(i) {
            checks += 1;
            let h = f.zip_with(g, |a, b| a + b)?;
            let sum = prevision.lower(&h)?;
            let separate = values[i] + values[j];
            if sum < separate - tol_for(h.values()) {
                return done(checks, Violation::SuperAdditivity { f: i, g: j, sum, separate });
            }
        }
    }
    for (i, f) in sample.iter().enumerate() {
        for &lambda in scalars.iter().filter(|&&l| l > 0.0) {
            checks += 1;
            let scaled = prevision.lower(&f.scale(lambda))?;
            let expected = lambda * values[i];
            if (scaled - expected).abs() > tol_for(f.scale(lambda).values()) {
                return done(checks, Violation::Homogeneity { f: i, lambda, scaled, expected });
            }
        }
    }
    Ok(CoherenceReport { checks, violation: None })
}

/// Largest `|P(f) + P(-f)|` over the sample; zero exactly for linear previsions.
pub fn self_conjugacy_gap<P: LowerPrevision>(prevision: &P, sample: &[Gamble]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for f in sample {
        worst = worst.max((prevision.lower(f)? + prevision.lower(&-f)?).abs());
    }
    Ok(worst)
}
