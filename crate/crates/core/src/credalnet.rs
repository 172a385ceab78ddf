//! Credal networks: one credal set per node and parent configuration, under
//! strong-extension semantics.

use crate::bayesnet::BayesNet;
use crate::credal_set::{CredalSet, Representation};
use crate::dominance::{self, DominanceReport, LocalRatios, PairTest};
use crate::error::{Error, Result};
use crate::network::{Evidence, Structure};

/// Minimum probability every element must keep under a constraint polytope.
pub const POSITIVITY_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CredalNet {
    structure: Structure,
    tables: Vec<Vec<CredalSet>>,
    /// `bounds[v][row][state]`: lower and upper probability of the state.
    bounds: Vec<Vec<Vec<(f64, f64)>>>,
}

impl CredalNet {
    pub fn new(structure: Structure, tables: Vec<Vec<CredalSet>>) -> Result<Self> {
        if tables.len() != structure.len() {
            return Err(Error::InvalidNetwork(format!(
                "{} tables for {} nodes",
                tables.len(),
                structure.len()
            )));
        }
        let mut bounds = Vec::with_capacity(tables.len());
        for (v, rows) in tables.iter().enumerate() {
            let name = structure.name(v);
            if rows.len() != structure.row_count(v) {
                return Err(Error::InvalidNetwork(format!(
                    "node `{name}` needs {} rows, found {}",
                    structure.row_count(v),
                    rows.len()
                )));
            }
            let mut node_bounds = Vec::with_capacity(rows.len());
            for (r, set) in rows.iter().enumerate() {
                structure.space(v).ensure_same(set.space())?;
                check_positive(set)
                    .map_err(|why| Error::InvalidNetwork(format!("row {r} of node `{name}`: {why}")))?;
                node_bounds
                    .push((0..set.space().len()).map(|x| set.local_bounds(x)).collect::<Result<Vec<_>>>()?);
            }
            bounds.push(node_bounds);
        }
        Ok(Self { structure, tables, bounds })
    }

    /// The credal net whose every local set is the corresponding row.
    pub fn degenerate(net: &BayesNet) -> Self {
        let s = net.structure();
        let tables =
            (0..s.len()).map(|v| net.table(v).iter().cloned().map(CredalSet::linear).collect()).collect();
        Self::new(s.clone(), tables).expect("a valid Bayesian net is a valid credal net")
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn table(&self, node: usize) -> &[CredalSet] {
        &self.tables[node]
    }

    /// Lower and upper probability of `state` in row `row` of `node`.
    pub fn local_bounds(&self, node: usize, row: usize, state: usize) -> (f64, f64) {
        self.bounds[node][row][state]
    }

    /// Exact minimum of `p(num)/p(den)` over one local credal set.
    pub fn min_local_ratio(&self, node: usize, row: usize, num: usize, den: usize) -> Result<f64> {
        self.tables[node][row].min_prob_ratio(num, den)
    }

    pub fn lmu_product(&self, class: usize, num: usize, den: usize, fixed: &Evidence) -> Result<f64> {
        dominance::mu_product(self, class, num, den, fixed)
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

    pub fn classify(&self, class: usize, evidence: &Evidence, cap: u128) -> Result<DominanceReport> {
        dominance::classify_with(self, class, evidence, cap)
    }
}

fn check_positive(set: &CredalSet) -> std::result::Result<(), String> {
    match set.representation() {
        Representation::Linear(m) => {
            if m.probs().iter().any(|&p| p <= 0.0) {
                return Err("mass function is not strictly positive".into());
            }
        }
        Representation::Vertices(vs) => {
            if vs.iter().any(|m| m.probs().iter().any(|&p| p <= 0.0)) {
                return Err("a vertex is not strictly positive".into());
            }
        }
        Representation::Intervals { lower, .. } => {
            if lower.iter().any(|&l| l <= 0.0) {
                return Err("a lower bound is zero".into());
            }
        }
        Representation::Polytope(_) => {
            for x in 0..set.space().len() {
                let lo = set.lower_prob(&[x]).map_err(|e| e.to_string())?;
                if lo < POSITIVITY_MARGIN {
                    return Err(format!("element `{}` can reach probability {lo}", set.space().label(x)));
                }
            }
        }
    }
    Ok(())
}

impl LocalRatios for CredalNet {
    fn structure(&self) -> &Structure {
        &self.structure
    }

    fn class_ratio(&self, node: usize, row: usize, num: usize, den: usize) -> Result<f64> {
        self.min_local_ratio(node, row, num, den)
    }

    fn child_ratio(&self, node: usize, row_num: usize, row_den: usize, state: usize) -> Result<f64> {
        Ok(self.bounds[node][row_num][state].0 / self.bounds[node][row_den][state].1)
    }
}
