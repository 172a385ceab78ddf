//! Finite possibility spaces, gambles and mass functions.
//!
//! A [`FiniteSpace`] fixes an ordering of its elements once, at construction.
//! Every gamble and mass function on that space is a dense array in that
//! order, so indices are interchangeable across the crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Absolute tolerance used for non-strict numeric comparisons.
pub const TOL: f64 = 1e-9;

/// Sum tolerance for mass functions built directly in code.
pub const MASS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    name: String,
    elements: Vec<String>,
}

impl FiniteSpace {
    pub fn new<S: Into<String>, L: Into<String>>(
        name: S,
        elements: impl IntoIterator<Item = L>,
    ) -> Result<Arc<Self>> {
        let name = name.into();
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.is_empty() {
            return Err(Error::InvalidSpace { space: name, reason: "no elements".into() });
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::InvalidSpace { space: name, reason: format!("duplicate label `{e}`") });
            }
        }
        Ok(Arc::new(Self { name, elements }))
    }

    /// Space with labels `0..n` rendered as strings.
    pub fn indexed(name: impl Into<String>, n: usize) -> Result<Arc<Self>> {
        Self::new(name, (0..n).map(|i| i.to_string()))
    }

    /// Cartesian product, row-major with the last factor varying fastest.
    /// Labels are the factor labels joined by `,`.
    pub fn product(factors: &[Arc<FiniteSpace>]) -> Result<Arc<Self>> {
        let name = factors.iter().map(|f| f.name.as_str()).collect::<Vec<_>>().join("×");
        let mut labels = vec![String::new()];
        for (k, f) in factors.iter().enumerate() {
            let mut next = Vec::with_capacity(labels.len() * f.len());
            for prefix in &labels {
                for e in &f.elements {
                    if k == 0 {
                        next.push(e.clone());
                    } else {
                        next.push(format!("{prefix},{e}"));
                    }
                }
            }
            labels = next;
        }
        Self::new(name, labels)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, index: usize) -> &str {
        &self.elements[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == label)
            .ok_or_else(|| Error::UnknownElement { space: self.name.clone(), label: label.to_string() })
    }

    pub(crate) fn ensure_same(&self, other: &FiniteSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch { expected: self.name.clone(), found: other.name.clone() })
        }
    }
}

impl fmt::Display for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {{{}}}", self.name, self.elements.join(", "))
    }
}

fn check_values(space: &FiniteSpace, values: &[f64]) -> Result<()> {
    if values.len() != space.len() {
        return Err(Error::LengthMismatch {
            space: space.name.clone(),
            expected: space.len(),
            found: values.len(),
        });
    }
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    Ok(())
}

/// A bounded real-valued function on a finite space: an uncertain reward.
#[derive(Debug, Clone, PartialEq)]
pub struct Gamble {
    space: Arc<FiniteSpace>,
    values: Vec<f64>,
}

impl Gamble {
    pub fn new(space: Arc<FiniteSpace>, values: Vec<f64>) -> Result<Self> {
        check_values(&space, &values)?;
        Ok(Self { space, values })
    }

    pub fn constant(space: Arc<FiniteSpace>, value: f64) -> Self {
        let values = vec![value; space.len()];
        Self { space, values }
    }

    /// Indicator of the elements flagged in `members`.
    pub fn indicator(space: Arc<FiniteSpace>, members: &[usize]) -> Self {
        let mut values = vec![0.0; space.len()];
        for &i in members {
            values[i] = 1.0;
        }
        Self { space, values }
    }

    pub fn from_fn(space: Arc<FiniteSpace>, f: impl Fn(usize) -> f64) -> Self {
        let values = (0..space.len()).map(f).collect();
        Self { space, values }
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self { space: self.space.clone(), values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip_with(&self, other: &Gamble, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.space.ensure_same(&other.space)?;
        Ok(Self {
            space: self.space.clone(),
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.map(|v| v * factor)
    }
}

impl Neg for &Gamble {
    type Output = Gamble;
    fn neg(self) -> Gamble {
        self.map(|v| -v)
    }
}

impl Add<f64> for &Gamble {
    type Output = Gamble;
    fn add(self, c: f64) -> Gamble {
        self.map(|v| v + c)
    }
}

impl Sub<f64> for &Gamble {
    type Output = Gamble;
    fn sub(self, c: f64) -> Gamble {
        self.map(|v| v - c)
    }
}

impl Mul<f64> for &Gamble {
    type Output = Gamble;
    fn mul(self, c: f64) -> Gamble {
        self.scale(c)
    }
}

/// A probability mass function on a finite space.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    space: Arc<FiniteSpace>,
    probs: Vec<f64>,
}

impl MassFunction {
    pub fn new(space: Arc<FiniteSpace>, probs: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(space, probs, MASS_TOL)
    }

    /// Accepts a vector whose sum is within `tol` of one. Values are stored
    /// verbatim, never renormalised.
    pub fn with_tolerance(space: Arc<FiniteSpace>, probs: Vec<f64>, tol: f64) -> Result<Self> {
        check_values(&space, &probs)?;
        if let Some(i) = probs.iter().position(|&p| p < 0.0) {
            return Err(Error::InvalidMass(format!(
                "negative probability {} at `{}`",
                probs[i],
                space.label(i)
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::InvalidMass(format!("probabilities sum to {sum}")));
        }
        Ok(Self { space, probs })
    }

    pub fn uniform(space: Arc<FiniteSpace>) -> Self {
        let n = space.len();
        Self { probs: vec![1.0 / n as f64; n], space }
    }

    /// Point mass on a single element.
    pub fn degenerate(space: Arc<FiniteSpace>, index: usize) -> Self {
        let mut probs = vec![0.0; space.len()];
        probs[index] = 1.0;
        Self { space, probs }
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, index: usize) -> f64 {
        self.probs[index]
    }

    /// Probability of a set of element indices.
    pub fn prob_of(&self, members: &[usize]) -> f64 {
        members.iter().map(|&i| self.probs[i]).sum()
    }

    pub fn expectation(&self, f: &Gamble) -> Result<f64> {
        self.space.ensure_same(&f.space)?;
        Ok(dot(&self.probs, &f.values))
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
