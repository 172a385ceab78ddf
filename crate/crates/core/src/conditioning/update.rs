use crate::credal_set::CredalSet;
use crate::error::{Error, Result};
use crate::observation::ObservationModel;
use crate::space::{Gamble, TOL};

use super::joint::{AttainedLower, JointLowerPrevision};
use super::root::{greatest_root, SupportedFunction};

/// An updated lower prevision value. `vacuous` is set when the observation
/// carried no usable information and the value is the minimum of the gamble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Updated {
    pub value: f64,
    pub vacuous: bool,
}

/// `μ ↦ P(I_B (h - μ))`.
struct EventGap<'a, P: ?Sized> {
    prevision: &'a P,
    event: Vec<bool>,
    h: &'a [f64],
}

impl<P: AttainedLower + ?Sized> SupportedFunction for EventGap<'_, P> {
    fn support(&self, mu: f64) -> Result<(f64, f64)> {
        let shifted: Vec<f64> =
            self.h.iter().zip(&self.event).map(|(&v, &inside)| if inside { v - mu } else { 0.0 }).collect();
        let (value, q) = self.prevision.lower_attained(&shifted)?;
        let mass: f64 = q.iter().zip(&self.event).filter(|(_, &b)| b).map(|(p, _)| p).sum();
        Ok((value, -mass))
    }
}

fn gbr_root<P: AttainedLower + ?Sized>(prevision: &P, members: &[usize], h: &[f64]) -> Result<f64> {
    let n = prevision.domain_space().len();
    let mut event = vec![false; n];
    for &x in members {
        event[x] = true;
    }
    let (lower_mass, _) =
        prevision.lower_attained(&event.iter().map(|&b| f64::from(u8::from(b))).collect::<Vec<_>>())?;
    if lower_mass <= TOL {
        return Err(Error::ZeroLowerProbability);
    }
    let values: Vec<f64> = members.iter().map(|&x| h[x]).collect();
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let g = EventGap { prevision, event, h };
    greatest_root(&g, &[lo, hi])
}

/// Generalised Bayes rule on an arbitrary event of a credal set's space.
pub fn gbr_on_event(prior: &CredalSet, event: &[usize], h: &Gamble) -> Result<f64> {
    prior.space().ensure_same(h.space())?;
    gbr_root(prior, event, h.values())
}

/// Conditional lower prevision of `h` given that coordinate `factor` of the
/// joint equals `element`, by the generalised Bayes rule.
pub fn gbr_conditional(
    joint: &JointLowerPrevision,
    factor: usize,
    element: usize,
    h: &Gamble,
) -> Result<f64> {
    joint.space().ensure_same(h.space())?;
    if factor >= joint.factors().len() || element >= joint.factors()[factor].len() {
        return Err(Error::InvalidQuery(format!("no element {element} in factor {factor}")));
    }
    gbr_root(joint, &joint.event(factor, element), h.values())
}

/// `μ ↦ P₀(I_{o₊}(f - μ) + I_{o*∖o₊} min(f - μ, 0))`.
struct ObservationGap<'a> {
    prior: &'a CredalSet,
    forcing: Vec<bool>,
    compatible: Vec<bool>,
    f: &'a [f64],
}

impl SupportedFunction for ObservationGap<'_> {
    fn support(&self, mu: f64) -> Result<(f64, f64)> {
        let n = self.f.len();
        let shifted: Vec<f64> = (0..n)
            .map(|x| {
                let d = self.f[x] - mu;
                if self.forcing[x] {
                    d
                } else if self.compatible[x] {
                    d.min(0.0)
                } else {
                    0.0
                }
            })
            .collect();
        let (value, q) = self.prior.lower_values(&shifted)?;
        // Left derivative of the attaining expectation at `mu`.
        let slope: f64 =
            (0..n).filter(|&x| self.forcing[x] || (self.compatible[x] && self.f[x] < mu)).map(|x| q[x]).sum();
        Ok((value, -slope))
    }
}

fn observation_root<M: ObservationModel>(
    prior: &CredalSet,
    model: &M,
    o: &M::Obs,
    f: &Gamble,
) -> Result<f64> {
    let n = prior.space().len();
    let mut forcing = vec![false; n];
    let mut compatible = vec![false; n];
    for x in model.forcing_states(o)? {
        forcing[x] = true;
    }
    let star = model.compatible_states(o)?;
    for &x in &star {
        compatible[x] = true;
    }
    let breakpoints: Vec<f64> = star.iter().map(|&x| f.values()[x]).collect();
    let g = ObservationGap { prior, forcing, compatible, f: f.values() };
    greatest_root(&g, &breakpoints)
}

fn check_spaces<M: ObservationModel>(prior: &CredalSet, model: &M, f: &Gamble) -> Result<()> {
    model.states().ensure_same(prior.space())?;
    model.states().ensure_same(f.space())
}

/// Regular extension of the prior given observation `o` under an unknown
/// incompleteness mechanism. Vacuous when `{o}*` has zero upper probability.
pub fn regular_extension_obs<M: ObservationModel>(
    prior: &CredalSet,
    model: &M,
    o: &M::Obs,
    f: &Gamble,
) -> Result<Updated> {
    check_spaces(prior, model, f)?;
    let star = model.compatible_states(o)?;
    if prior.upper_prob(&star)? <= TOL {
        return Ok(Updated { value: f.min(), vacuous: true });
    }
    Ok(Updated { value: observation_root(prior, model, o, f)?, vacuous: false })
}

/// Natural extension: vacuous unless `{o}₊` has positive lower probability,
/// in which case it coincides with the regular extension.
pub fn natural_extension_obs<M: ObservationModel>(
    prior: &CredalSet,
    model: &M,
    o: &M::Obs,
    f: &Gamble,
) -> Result<Updated> {
    check_spaces(prior, model, f)?;
    let plus = model.forcing_states(o)?;
    if plus.is_empty() || prior.lower_prob(&plus)? <= TOL {
        return Ok(Updated { value: f.min(), vacuous: true });
    }
    Ok(Updated { value: observation_root(prior, model, o, f)?, vacuous: false })
}

/// Expectation of `h` under `q` restricted to the event, used by tests to
/// re-evaluate the defining equation.
#[cfg(test)]
fn event_gap(q: &[f64], h: &[f64], event: &[usize], mu: f64) -> f64 {
    use crate::space::dot;
    let mut shifted = vec![0.0; h.len()];
    for &x in event {
        shifted[x] = h[x] - mu;
    }
    dot(q, &shifted)
}
