use std::sync::Arc;

use crate::coherence::LowerPrevision;
use crate::credal_set::CredalSet;
use crate::error::{Error, Result};
use crate::space::{FiniteSpace, Gamble};

/// Lower previsions that also report a mass function attaining the value.
pub trait AttainedLower {
    fn domain_space(&self) -> &Arc<FiniteSpace>;

    fn lower_attained(&self, f: &[f64]) -> Result<(f64, Vec<f64>)>;
}

impl AttainedLower for CredalSet {
    fn domain_space(&self) -> &Arc<FiniteSpace> {
        self.space()
    }

    fn lower_attained(&self, f: &[f64]) -> Result<(f64, Vec<f64>)> {
        self.lower_values(f)
    }
}

/// A separately coherent conditional lower prevision: one credal set over
/// `target` for every element of `given`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalFamily {
    given: Arc<FiniteSpace>,
    target: Arc<FiniteSpace>,
    members: Vec<CredalSet>,
}

impl ConditionalFamily {
    pub fn new(given: Arc<FiniteSpace>, target: Arc<FiniteSpace>, members: Vec<CredalSet>) -> Result<Self> {
        if members.len() != given.len() {
            return Err(Error::LengthMismatch {
                space: given.name().to_string(),
                expected: given.len(),
                found: members.len(),
            });
        }
        for m in &members {
            target.ensure_same(m.space())?;
        }
        Ok(Self { given, target, members })
    }

    /// `P(·|x)` vacuous relative to `support(x)` for every `x`.
    pub fn vacuous_relative(
        given: Arc<FiniteSpace>,
        target: Arc<FiniteSpace>,
        support: impl Fn(usize) -> Vec<usize>,
    ) -> Result<Self> {
        let members = (0..given.len())
            .map(|x| CredalSet::vacuous_on(target.clone(), &support(x)))
            .collect::<Result<_>>()?;
        Self::new(given, target, members)
    }

    pub fn given(&self) -> &Arc<FiniteSpace> {
        &self.given
    }

    pub fn target(&self) -> &Arc<FiniteSpace> {
        &self.target
    }

    pub fn member(&self, index: usize) -> &CredalSet {
        &self.members[index]
    }

    pub fn members(&self) -> &[CredalSet] {
        &self.members
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Evaluator {
    Flat(CredalSet),
    /// A marginal on the first factor followed by conditionals, each given
    /// the product of all earlier factors.
    Nested {
        marginal: CredalSet,
        conditionals: Vec<ConditionalFamily>,
    },
}

/// A lower prevision on a product space, either explicit or kept as a
/// marginal-extension chain evaluated innermost-first.
#[derive(Debug, Clone, PartialEq)]
pub struct JointLowerPrevision {
    factors: Vec<Arc<FiniteSpace>>,
    space: Arc<FiniteSpace>,
    evaluator: Evaluator,
}

impl JointLowerPrevision {
    pub fn from_credal_set(factors: Vec<Arc<FiniteSpace>>, set: CredalSet) -> Result<Self> {
        let space = FiniteSpace::product(&factors)?;
        space.ensure_same(set.space())?;
        Ok(Self { factors, space, evaluator: Evaluator::Flat(set) })
    }

    pub fn factors(&self) -> &[Arc<FiniteSpace>] {
        &self.factors
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.factors.len()];
        for k in (0..self.factors.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.factors[k + 1].len();
        }
        strides
    }

    /// Index of the `factor` coordinate of a joint element.
    pub fn coordinate(&self, joint_index: usize, factor: usize) -> usize {
        (joint_index / self.strides()[factor]) % self.factors[factor].len()
    }

    /// Joint elements whose `factor` coordinate equals `element`.
    pub fn event(&self, factor: usize, element: usize) -> Vec<usize> {
        let strides = self.strides();
        let n = self.factors[factor].len();
        (0..self.space.len()).filter(|&j| (j / strides[factor]) % n == element).collect()
    }

    /// A gamble on one factor, viewed as a gamble on the product.
    pub fn lift(&self, factor: usize, f: &Gamble) -> Result<Gamble> {
        self.factors[factor].ensure_same(f.space())?;
        let strides = self.strides();
        let n = self.factors[factor].len();
        Ok(Gamble::from_fn(self.space.clone(), |j| f.values()[(j / strides[factor]) % n]))
    }

    pub fn lower(&self, h: &Gamble) -> Result<f64> {
        self.space.ensure_same(h.space())?;
        Ok(self.lower_attained(h.values())?.0)
    }
}

impl AttainedLower for JointLowerPrevision {
    fn domain_space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    fn lower_attained(&self, h: &[f64]) -> Result<(f64, Vec<f64>)> {
        let (marginal, conditionals) = match &self.evaluator {
            Evaluator::Flat(cs) => return cs.lower_values(h),
            Evaluator::Nested { marginal, conditionals } => (marginal, conditionals),
        };
        // Innermost first: collapse the last factor until only the marginal's remains.
        let mut values = h.to_vec();
        let mut argmins: Vec<Vec<Vec<f64>>> = Vec::with_capacity(conditionals.len());
        for family in conditionals.iter().rev() {
            let t = family.target.len();
            let mut collapsed = Vec::with_capacity(family.given.len());
            let mut level = Vec::with_capacity(family.given.len());
            for (g, member) in family.members.iter().enumerate() {
                let (v, q) = member.lower_values(&values[g * t..(g + 1) * t])?;
                collapsed.push(v);
                level.push(q);
            }
            values = collapsed;
            argmins.push(level);
        }
        let (value, mut weights) = marginal.lower_values(&values)?;
        for level in argmins.iter().rev() {
            let mut next = Vec::with_capacity(weights.len() * level[0].len());
            for (w, q) in weights.iter().zip(level) {
                next.extend(q.iter().map(|p| w * p));
            }
            weights = next;
        }
        Ok((value, weights))
    }
}

impl LowerPrevision for JointLowerPrevision {
    fn domain(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    fn lower(&self, f: &Gamble) -> Result<f64> {
        JointLowerPrevision::lower(self, f)
    }
}

/// Smallest coherent joint on `Y×X` with marginal `marginal` on `Y` that is
/// jointly coherent with `conditional` (X given Y):
/// `P(h) = P_Y(P(h(y, ·)|y))`.
pub fn marginal_extension2(
    marginal: CredalSet,
    conditional: ConditionalFamily,
) -> Result<JointLowerPrevision> {
    marginal.space().ensure_same(&conditional.given)?;
    let factors = vec![marginal.space().clone(), conditional.target.clone()];
    Ok(JointLowerPrevision {
        space: FiniteSpace::product(&factors)?,
        factors,
        evaluator: Evaluator::Nested { marginal, conditionals: vec![conditional] },
    })
}

/// Three-level marginal extension on `X×Y×Z`:
/// `P(h) = P_X(P(P(h|X,Y)|X))`.
pub fn marginal_extension3(
    marginal: CredalSet,
    cond_xy: ConditionalFamily,
    cond_xyz: ConditionalFamily,
) -> Result<JointLowerPrevision> {
    marginal.space().ensure_same(&cond_xy.given)?;
    let xy = FiniteSpace::product(&[marginal.space().clone(), cond_xy.target.clone()])?;
    if cond_xyz.given.elements() != xy.elements() {
        return Err(Error::SpaceMismatch {
            expected: xy.name().to_string(),
            found: cond_xyz.given.name().to_string(),
        });
    }
    let factors = vec![marginal.space().clone(), cond_xy.target.clone(), cond_xyz.target.clone()];
    Ok(JointLowerPrevision {
        space: FiniteSpace::product(&factors)?,
        factors,
        evaluator: Evaluator::Nested { marginal, conditionals: vec![cond_xy, cond_xyz] },
    })
}
