//! Bayesian networks with strictly positive conditional tables.

use std::sync::Arc;

use crate::conditioning::ConditionalFamily;
use crate::credal_set::CredalSet;
use crate::dominance::{self, DominanceReport, Interval, LocalRatios, PairTest, Point};
use crate::error::{Error, Result};
use crate::network::{for_each_assignment, Evidence, Structure};
use crate::observation::MissingnessPattern;
use crate::space::{FiniteSpace, MassFunction};

#[derive(Debug, Clone, PartialEq)]
pub struct BayesNet {
    structure: Structure,
    cpt: Vec<Vec<MassFunction>>,
}

impl BayesNet {
    /// `cpt[v][row]` is `p(· | parents of v in configuration row)`.
    pub fn new(structure: Structure, cpt: Vec<Vec<MassFunction>>) -> Result<Self> {
        if cpt.len() != structure.len() {
            return Err(Error::InvalidNetwork(format!("{} tables for {} nodes", cpt.len(), structure.len())));
        }
        for (v, rows) in cpt.iter().enumerate() {
            let name = structure.name(v);
            if rows.len() != structure.row_count(v) {
                return Err(Error::InvalidNetwork(format!(
                    "node `{name}` needs {} rows, found {}",
                    structure.row_count(v),
                    rows.len()
                )));
            }
            for (r, row) in rows.iter().enumerate() {
                structure.space(v).ensure_same(row.space())?;
                if row.probs().iter().any(|&p| p <= 0.0) {
                    return Err(Error::InvalidNetwork(format!(
                        "row {r} of node `{name}` is not strictly positive"
                    )));
                }
            }
        }
        Ok(Self { structure, cpt })
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn table(&self, node: usize) -> &[MassFunction] {
        &self.cpt[node]
    }

    /// Product of the table entries selected by a full assignment.
    pub fn joint_mass(&self, assignment: &[usize]) -> Result<f64> {
        let s = &self.structure;
        if assignment.len() != s.len() {
            return Err(Error::InvalidQuery(format!(
                "assignment covers {} of {} nodes",
                assignment.len(),
                s.len()
            )));
        }
        let mut p = 1.0;
        for v in 0..s.len() {
            if assignment[v] >= s.space(v).len() {
                return Err(Error::InvalidQuery(format!("state out of range for `{}`", s.name(v))));
            }
            p *= self.cpt[v][s.row_with(v, |q| assignment[q])].prob(assignment[v]);
        }
        Ok(p)
    }

    /// The net with every arc leaving an observed node deleted, each child
    /// keeping the table rows that agree with the evidence. Joint masses of
    /// assignments consistent with the evidence are unchanged.
    pub fn remove_evidence_arcs(&self, evidence: &Evidence) -> Result<BayesNet> {
        let s = &self.structure;
        if evidence.values().len() != s.len() {
            return Err(Error::InvalidQuery("evidence built for a different network".into()));
        }
        let dag = s.dag().without_out_arcs(&evidence.observed());
        let reduced = Structure::new(s.spaces().to_vec(), dag)?;
        let cpt = (0..s.len())
            .map(|v| {
                (0..reduced.row_count(v))
                    .map(|row| {
                        let kept = reduced.row_values(v, row);
                        let parents = reduced.dag().parents(v);
                        let original = s.row_with(v, |p| match evidence.get(p) {
                            Some(value) => value,
                            None => kept[parents.iter().position(|&q| q == p).unwrap()],
                        });
                        self.cpt[v][original].clone()
                    })
                    .collect()
            })
            .collect();
        BayesNet::new(reduced, cpt)
    }

    pub fn classify(&self, class: usize, evidence: &Evidence, cap: u128) -> Result<DominanceReport> {
        dominance::classify_with(self, class, evidence, cap)
    }

    pub fn credal_dominance(
        &self,
        class: usize,
        num: usize,
        den: usize,
        evidence: &Evidence,
        cap: u128,
    ) -> Result<PairTest> {
        dominance::dominance(self, class, num, den, evidence, cap)
    }

    /// Calls `visit(joint)` for every completion of the missing nodes,
    /// where `joint[c]` is `p(c, e, r)`.
    fn for_each_completion(
        &self,
        class: usize,
        evidence: &Evidence,
        cap: u128,
        mut visit: impl FnMut(&[f64]),
    ) -> Result<()> {
        let s = &self.structure;
        s.check_query(class, evidence)?;
        let missing = s.missing(class, evidence);
        let count = s.configurations(&missing);
        if count > cap {
            return Err(Error::CapExceeded { count, cap });
        }
        let k = s.space(class).len();
        let mut assignment: Vec<usize> = evidence.values().iter().map(|v| v.unwrap_or(0)).collect();
        let mut joint = vec![0.0; k];
        for_each_assignment(s, &missing, &mut assignment, |a| {
            let mut full = a.to_vec();
            for (c, slot) in joint.iter_mut().enumerate() {
                full[class] = c;
                *slot = self.joint_mass(&full)?;
            }
            visit(&joint);
            Ok(())
        })
    }

    /// `[min, max]` over completions of `p(c | e, r)` for every class state.
    pub fn posterior_bounds(&self, class: usize, evidence: &Evidence, cap: u128) -> Result<Vec<Interval>> {
        let k = self.structure.space(class).len();
        let mut lo = vec![f64::INFINITY; k];
        let mut hi = vec![f64::NEG_INFINITY; k];
        self.for_each_completion(class, evidence, cap, |joint| {
            let total: f64 = joint.iter().sum();
            for c in 0..k {
                let p = joint[c] / total;
                lo[c] = lo[c].min(p);
                hi[c] = hi[c].max(p);
            }
        })?;
        Ok(self.intervals(class, lo, hi))
    }

    /// `p(c | e)` with the missing nodes summed out.
    pub fn naive_posterior(&self, class: usize, evidence: &Evidence, cap: u128) -> Result<Vec<Point>> {
        let k = self.structure.space(class).len();
        let mut sums = vec![0.0; k];
        self.for_each_completion(class, evidence, cap, |joint| {
            for c in 0..k {
                sums[c] += joint[c];
            }
        })?;
        let total: f64 = sums.iter().sum();
        let labels = self.structure.space(class);
        Ok((0..k).map(|c| Point { class: labels.label(c).to_string(), value: sums[c] / total }).collect())
    }

    fn intervals(&self, class: usize, lo: Vec<f64>, hi: Vec<f64>) -> Vec<Interval> {
        let labels = self.structure.space(class);
        lo.into_iter()
            .zip(hi)
            .enumerate()
            .map(|(c, (lower, upper))| Interval { class: labels.label(c).to_string(), lower, upper })
            .collect()
    }

    /// Classification report with the optional posterior summaries attached.
    pub fn report(
        &self,
        class: usize,
        evidence: &Evidence,
        bounds: bool,
        naive: bool,
        cap: u128,
    ) -> Result<DominanceReport> {
        let mut report = self.classify(class, evidence, cap)?;
        if bounds {
            report.posterior_bounds = Some(self.posterior_bounds(class, evidence, cap)?);
        }
        if naive {
            report.naive_posterior = Some(self.naive_posterior(class, evidence, cap)?);
        }
        Ok(report)
    }

    /// Attribute nodes (all but the class, in index order).
    pub fn attributes(&self, class: usize) -> Vec<usize> {
        (0..self.structure.len()).filter(|&v| v != class).collect()
    }

    /// `p(class | attributes)` as a family of precise credal sets indexed by
    /// the product of the attribute spaces. Exponential in the number of
    /// attributes; intended for small nets.
    pub fn class_conditional(&self, class: usize, cap: u128) -> Result<ConditionalFamily> {
        let s = &self.structure;
        let attrs = self.attributes(class);
        let count = s.configurations(&attrs);
        if count > cap {
            return Err(Error::CapExceeded { count, cap });
        }
        let spaces: Vec<Arc<FiniteSpace>> = attrs.iter().map(|&v| s.space(v).clone()).collect();
        let given = FiniteSpace::product(&spaces)?;
        let target = s.space(class).clone();
        let mut members = Vec::with_capacity(given.len());
        let mut assignment = vec![0; s.len()];
        for_each_assignment(s, &attrs, &mut assignment, |a| {
            let mut full = a.to_vec();
            let joint: Vec<f64> = (0..target.len())
                .map(|c| {
                    full[class] = c;
                    self.joint_mass(&full)
                })
                .collect::<Result<_>>()?;
            let total: f64 = joint.iter().sum();
            let probs = joint.iter().map(|j| j / total).collect();
            members.push(CredalSet::linear(MassFunction::with_tolerance(target.clone(), probs, 1e-9)?));
            Ok(())
        })?;
        ConditionalFamily::new(given, target, members)
    }

    /// The evidence as a missingness pattern over [`BayesNet::attributes`].
    pub fn pattern(&self, class: usize, evidence: &Evidence) -> Result<MissingnessPattern> {
        self.structure.check_query(class, evidence)?;
        let attrs = self.attributes(class);
        MissingnessPattern::new(
            attrs.iter().map(|&v| self.structure.space(v).clone()).collect(),
            attrs.iter().map(|&v| evidence.get(v)).collect(),
        )
    }
}

impl LocalRatios for BayesNet {
    fn structure(&self) -> &Structure {
        &self.structure
    }

    fn class_ratio(&self, node: usize, row: usize, num: usize, den: usize) -> Result<f64> {
        let m = &self.cpt[node][row];
        Ok(m.prob(num) / m.prob(den))
    }

    fn child_ratio(&self, node: usize, row_num: usize, row_den: usize, state: usize) -> Result<f64> {
        Ok(self.cpt[node][row_num].prob(state) / self.cpt[node][row_den].prob(state))
    }
}
