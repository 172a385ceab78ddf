//! Incomplete observations: multi-valued maps, the naive (CAR) update, the
//! NAIVE-OK criterion, vacuous posteriors and the conservative updating rule.
//!
//! A multi-valued map `Γ` assigns to every state `x` the non-empty set of
//! observations it may produce. For an observation `o`, `{o}*` is the set
//! of states compatible with it and `{o}₊` the set of states that can only
//! produce `o`.
//!
//! The conservative updating rule presupposes that, once the complete
//! attribute vector is known, the missingness pattern carries no further
//! information about the class. That assumption cannot be tested from
//! incomplete data; callers of [`cur_posterior`] adopt it.

use std::sync::Arc;

use crate::conditioning::{gbr_on_event, ConditionalFamily};
use crate::credal_set::CredalSet;
use crate::error::{Error, Result};
use crate::space::{FiniteSpace, Gamble, MassFunction, TOL};

/// Anything that can report `{o}*` and `{o}₊` for its observations.
pub trait ObservationModel {
    type Obs: ?Sized;

    fn states(&self) -> &Arc<FiniteSpace>;

    /// `{o}*`, ascending.
    fn compatible_states(&self, o: &Self::Obs) -> Result<Vec<usize>>;

    /// `{o}₊`, ascending.
    fn forcing_states(&self, o: &Self::Obs) -> Result<Vec<usize>>;
}

/// An explicit multi-valued map between two finite spaces. Observations are
/// indices into the observation space.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiValuedMap {
    states: Arc<FiniteSpace>,
    observations: Arc<FiniteSpace>,
    gamma: Vec<Vec<usize>>,
}

impl MultiValuedMap {
    pub fn new(
        states: Arc<FiniteSpace>,
        observations: Arc<FiniteSpace>,
        mut gamma: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if gamma.len() != states.len() {
            return Err(Error::InvalidMap(format!("{} images for {} states", gamma.len(), states.len())));
        }
        for (x, image) in gamma.iter_mut().enumerate() {
            image.sort_unstable();
            image.dedup();
            if image.is_empty() {
                return Err(Error::InvalidMap(format!(
                    "state `{}` produces no observation",
                    states.label(x)
                )));
            }
            if let Some(&o) = image.iter().find(|&&o| o >= observations.len()) {
                return Err(Error::InvalidMap(format!("observation index {o} out of range")));
            }
        }
        for o in 0..observations.len() {
            if !gamma.iter().any(|image| image.contains(&o)) {
                return Err(Error::InvalidMap(format!(
                    "observation `{}` cannot be produced by any state",
                    observations.label(o)
                )));
            }
        }
        Ok(Self { states, observations, gamma })
    }

    /// Builds the map from labels: `images[k] = (state, [observations])`.
    pub fn from_labels(
        states: Arc<FiniteSpace>,
        observations: Arc<FiniteSpace>,
        images: &[(&str, &[&str])],
    ) -> Result<Self> {
        let mut gamma = vec![Vec::new(); states.len()];
        for (x, obs) in images {
            let xi = states.index_of(x)?;
            for o in *obs {
                gamma[xi].push(observations.index_of(o)?);
            }
        }
        Self::new(states, observations, gamma)
    }

    pub fn observations(&self) -> &Arc<FiniteSpace> {
        &self.observations
    }

    pub fn image(&self, state: usize) -> &[usize] {
        &self.gamma[state]
    }

    /// `Γ(x) = {x}` on a single space.
    pub fn identity(space: Arc<FiniteSpace>) -> Self {
        let gamma = (0..space.len()).map(|x| vec![x]).collect();
        Self { states: space.clone(), observations: space, gamma }
    }

    fn check_obs(&self, o: usize) -> Result<()> {
        if o < self.observations.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement { space: self.observations.name().to_string(), label: o.to_string() })
        }
    }

    /// Number of deterministic selections `Π |Γ(x)|`.
    pub fn selection_count(&self) -> u128 {
        self.gamma.iter().map(|g| g.len() as u128).product()
    }
}

impl ObservationModel for MultiValuedMap {
    type Obs = usize;

    fn states(&self) -> &Arc<FiniteSpace> {
        &self.states
    }

    fn compatible_states(&self, o: &usize) -> Result<Vec<usize>> {
        self.check_obs(*o)?;
        Ok((0..self.states.len()).filter(|&x| self.gamma[x].contains(o)).collect())
    }

    fn forcing_states(&self, o: &usize) -> Result<Vec<usize>> {
        self.check_obs(*o)?;
        Ok((0..self.states.len()).filter(|&x| self.gamma[x] == [*o]).collect())
    }
}

/// An attribute vector with some components observed and the rest missing.
#[derive(Debug, Clone, PartialEq)]
pub struct MissingnessPattern {
    attributes: Vec<Arc<FiniteSpace>>,
    observed: Vec<Option<usize>>,
}

impl MissingnessPattern {
    pub fn new(attributes: Vec<Arc<FiniteSpace>>, observed: Vec<Option<usize>>) -> Result<Self> {
        if attributes.len() != observed.len() {
            return Err(Error::InvalidQuery(format!(
                "{} attributes but {} observation slots",
                attributes.len(),
                observed.len()
            )));
        }
        for (k, (space, o)) in attributes.iter().zip(&observed).enumerate() {
            if let Some(v) = o {
                if *v >= space.len() {
                    return Err(Error::InvalidQuery(format!(
                        "value index {v} out of range for attribute {k}"
                    )));
                }
            }
        }
        Ok(Self { attributes, observed })
    }

    pub fn attributes(&self) -> &[Arc<FiniteSpace>] {
        &self.attributes
    }

    pub fn observed(&self) -> &[Option<usize>] {
        &self.observed
    }

    pub fn missing(&self) -> Vec<usize> {
        (0..self.observed.len()).filter(|&k| self.observed[k].is_none()).collect()
    }

    /// `|ℛ|`: number of completions of the missing part.
    pub fn completion_count(&self) -> u128 {
        self.missing().iter().map(|&k| self.attributes[k].len() as u128).product()
    }

    /// Every completion `(e, r)` as a full attribute-value vector, with the
    /// last missing attribute varying fastest.
    pub fn completions(&self) -> Completions<'_> {
        let start: Vec<usize> = self.observed.iter().map(|o| o.unwrap_or(0)).collect();
        Completions { pattern: self, missing: self.missing(), next: Some(start) }
    }

    /// Row-major index of a full attribute vector in the product space.
    pub fn flat_index(&self, values: &[usize]) -> usize {
        values.iter().zip(&self.attributes).fold(0, |acc, (&v, s)| acc * s.len() + v)
    }
}

pub struct Completions<'a> {
    pattern: &'a MissingnessPattern,
    missing: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Iterator for Completions<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut advanced = false;
        for &k in self.missing.iter().rev() {
            succ[k] += 1;
            if succ[k] < self.pattern.attributes[k].len() {
                advanced = true;
                break;
            }
            succ[k] = 0;
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// The missing-data map: each attribute is either reported exactly or
/// reported missing. Observations are [`MissingnessPattern`]s; the product
/// observation space is never built.
#[derive(Debug, Clone, PartialEq)]
pub struct MissingDataMap {
    attributes: Vec<Arc<FiniteSpace>>,
    states: Arc<FiniteSpace>,
}

impl MissingDataMap {
    pub fn new(attributes: Vec<Arc<FiniteSpace>>) -> Result<Self> {
        if attributes.is_empty() {
            return Err(Error::InvalidMap("no attributes".into()));
        }
        let states = FiniteSpace::product(&attributes)?;
        Ok(Self { attributes, states })
    }

    pub fn attributes(&self) -> &[Arc<FiniteSpace>] {
        &self.attributes
    }

    pub fn pattern(&self, observed: Vec<Option<usize>>) -> Result<MissingnessPattern> {
        MissingnessPattern::new(self.attributes.clone(), observed)
    }

    fn check(&self, o: &MissingnessPattern) -> Result<()> {
        if o.attributes != self.attributes {
            return Err(Error::InvalidQuery("pattern attributes differ from the map's".into()));
        }
        Ok(())
    }
}

impl ObservationModel for MissingDataMap {
    type Obs = MissingnessPattern;

    fn states(&self) -> &Arc<FiniteSpace> {
        &self.states
    }

    fn compatible_states(&self, o: &MissingnessPattern) -> Result<Vec<usize>> {
        self.check(o)?;
        let mut states: Vec<usize> = o.completions().map(|x| o.flat_index(&x)).collect();
        states.sort_unstable();
        Ok(states)
    }

    /// Every state may also produce the all-missing observation, so no
    /// state forces a single observation.
    fn forcing_states(&self, o: &MissingnessPattern) -> Result<Vec<usize>> {
        self.check(o)?;
        Ok(Vec::new())
    }
}

/// Naive update: condition the prior on the event `{o}*`.
pub fn naive_update<M: ObservationModel>(
    prior: &MassFunction,
    model: &M,
    o: &M::Obs,
    f: &Gamble,
) -> Result<f64> {
    model.states().ensure_same(prior.space())?;
    model.states().ensure_same(f.space())?;
    let star = model.compatible_states(o)?;
    let mass = prior.prob_of(&star);
    if mass <= TOL {
        return Err(Error::ZeroProbability);
    }
    let num: f64 = star.iter().map(|&x| prior.prob(x) * f.values()[x]).sum();
    Ok(num / mass)
}

/// Posterior under coarsening at random with an imprecise prior: Bayes' rule
/// applied to every prior mass function on `{o}*`, then the lower envelope.
pub fn car_posterior<M: ObservationModel>(
    prior: &CredalSet,
    model: &M,
    o: &M::Obs,
    f: &Gamble,
) -> Result<f64> {
    model.states().ensure_same(prior.space())?;
    let star = model.compatible_states(o)?;
    if prior.lower_prob(&star)? <= TOL {
        return Err(Error::ZeroLowerProbability);
    }
    match prior.explicit_vertices() {
        Some(vertices) => {
            let mut best = f64::INFINITY;
            for v in vertices {
                let mass = v.prob_of(&star);
                let num: f64 = star.iter().map(|&x| v.prob(x) * f.values()[x]).sum();
                best = best.min(num / mass);
            }
            Ok(best)
        }
        None => gbr_on_event(prior, &star, f),
    }
}

/// `{o}₊ = {o}*`: every state that may produce `o` can only produce `o`.
pub fn naive_ok<M: ObservationModel>(model: &M, o: &M::Obs) -> Result<bool> {
    Ok(model.forcing_states(o)? == model.compatible_states(o)?)
}

/// The vacuous posterior relative to `{o}*`, valid when no state forces `o`
/// and every compatible state has positive upper probability.
pub fn vacuous_posterior<M: ObservationModel>(
    prior: &CredalSet,
    model: &M,
    o: &M::Obs,
    f: &Gamble,
) -> Result<f64> {
    model.states().ensure_same(prior.space())?;
    model.states().ensure_same(f.space())?;
    if !model.forcing_states(o)?.is_empty() {
        return Err(Error::AssumptionViolated("some state can only produce this observation".into()));
    }
    let star = model.compatible_states(o)?;
    for &x in &star {
        if prior.upper_prob(&[x])? <= 0.0 {
            return Err(Error::AssumptionViolated(format!(
                "state `{}` has zero upper probability",
                prior.space().label(x)
            )));
        }
    }
    Ok(star.iter().map(|&x| f.values()[x]).fold(f64::INFINITY, f64::min))
}

/// Conservative updating rule: the minimum, over all completions of the
/// missing attributes, of the conditional lower prevision given the
/// completed attribute vector.
pub fn cur_posterior(
    conditional: &ConditionalFamily,
    pattern: &MissingnessPattern,
    f: &Gamble,
) -> Result<f64> {
    conditional.target().ensure_same(f.space())?;
    let given = conditional.given();
    let expected: u128 = pattern.attributes().iter().map(|a| a.len() as u128).product();
    if expected != given.len() as u128 {
        return Err(Error::InvalidQuery("pattern attributes do not index the conditional family".into()));
    }
    let mut best = f64::INFINITY;
    for x in pattern.completions() {
        best = best.min(conditional.member(pattern.flat_index(&x)).lower(f)?);
    }
    Ok(best)
}
