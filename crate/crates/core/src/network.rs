//! Graph structure shared by Bayesian and credal networks, plus evidence.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Dag;
use crate::space::FiniteSpace;

/// Nodes (each a named finite space) and the arcs between them.
///
/// Tables attached to a node have one row per configuration of its parents,
/// enumerated row-major in parent declaration order with the last parent
/// varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct Structure {
    spaces: Vec<Arc<FiniteSpace>>,
    dag: Dag,
}

impl Structure {
    pub fn new(spaces: Vec<Arc<FiniteSpace>>, dag: Dag) -> Result<Self> {
        if spaces.len() != dag.len() {
            return Err(Error::InvalidNetwork(format!(
                "{} node spaces for a graph with {} nodes",
                spaces.len(),
                dag.len()
            )));
        }
        for (i, s) in spaces.iter().enumerate() {
            if spaces[..i].iter().any(|t| t.name() == s.name()) {
                return Err(Error::InvalidNetwork(format!("duplicate node `{}`", s.name())));
            }
        }
        Ok(Self { spaces, dag })
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn space(&self, node: usize) -> &Arc<FiniteSpace> {
        &self.spaces[node]
    }

    pub fn spaces(&self) -> &[Arc<FiniteSpace>] {
        &self.spaces
    }

    pub fn name(&self, node: usize) -> &str {
        self.spaces[node].name()
    }

    pub fn node(&self, name: &str) -> Result<usize> {
        self.spaces
            .iter()
            .position(|s| s.name() == name)
            .ok_or_else(|| Error::InvalidQuery(format!("unknown node `{name}`")))
    }

    pub fn row_count(&self, node: usize) -> usize {
        self.dag.parents(node).iter().map(|&p| self.spaces[p].len()).product()
    }

    /// Row of `node`'s table selected by the parent values `value(p)`.
    pub fn row_with(&self, node: usize, value: impl Fn(usize) -> usize) -> usize {
        self.dag.parents(node).iter().fold(0, |row, &p| row * self.spaces[p].len() + value(p))
    }

    /// Parent values encoded by a row index, in parent declaration order.
    pub fn row_values(&self, node: usize, mut row: usize) -> Vec<usize> {
        let parents = self.dag.parents(node);
        let mut values = vec![0; parents.len()];
        for (k, &p) in parents.iter().enumerate().rev() {
            let n = self.spaces[p].len();
            values[k] = row % n;
            row /= n;
        }
        values
    }

    /// Parses `(node, state)` label pairs into evidence.
    pub fn evidence(&self, pairs: &[(&str, &str)]) -> Result<Evidence> {
        let mut values = vec![None; self.len()];
        for (name, label) in pairs {
            let v = self.node(name)?;
            let s = self.spaces[v]
                .index_of(label)
                .map_err(|_| Error::InvalidQuery(format!("node `{name}` has no state `{label}`")))?;
            if values[v].is_some_and(|old| old != s) {
                return Err(Error::InvalidQuery(format!("conflicting evidence on `{name}`")));
            }
            values[v] = Some(s);
        }
        Ok(Evidence { values })
    }

    pub(crate) fn check_query(&self, class: usize, evidence: &Evidence) -> Result<()> {
        if class >= self.len() {
            return Err(Error::InvalidQuery(format!("node index {class} out of range")));
        }
        if evidence.values.len() != self.len() {
            return Err(Error::InvalidQuery("evidence built for a different network".into()));
        }
        for (v, val) in evidence.values.iter().enumerate() {
            if val.is_some_and(|s| s >= self.spaces[v].len()) {
                return Err(Error::InvalidQuery(format!("state out of range for `{}`", self.name(v))));
            }
        }
        if evidence.values[class].is_some() {
            return Err(Error::InvalidQuery(format!("class node `{}` cannot be observed", self.name(class))));
        }
        Ok(())
    }

    /// Nodes that are neither the class nor observed, ascending.
    pub fn missing(&self, class: usize, evidence: &Evidence) -> Vec<usize> {
        (0..self.len()).filter(|&v| v != class && evidence.values[v].is_none()).collect()
    }

    /// `Π |space|` over the given nodes, saturating.
    pub fn configurations(&self, nodes: &[usize]) -> u128 {
        nodes.iter().fold(1u128, |acc, &v| acc.saturating_mul(self.spaces[v].len() as u128))
    }
}

/// A partial assignment of node states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    values: Vec<Option<usize>>,
}

impl Evidence {
    pub fn none(n: usize) -> Self {
        Self { values: vec![None; n] }
    }

    pub fn from_values(values: Vec<Option<usize>>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[Option<usize>] {
        &self.values
    }

    pub fn get(&self, node: usize) -> Option<usize> {
        self.values[node]
    }

    pub fn observed(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&v| self.values[v].is_some()).collect()
    }

    pub fn with(&self, node: usize, state: usize) -> Self {
        let mut values = self.values.clone();
        values[node] = Some(state);
        Self { values }
    }
}

/// Visits every assignment of `nodes` (last node fastest), writing the
/// states into `assignment` in place.
pub(crate) fn for_each_assignment<F>(
    structure: &Structure,
    nodes: &[usize],
    assignment: &mut [usize],
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&[usize]) -> Result<()>,
{
    for &v in nodes {
        assignment[v] = 0;
    }
    loop {
        visit(assignment)?;
        let mut k = nodes.len();
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            let v = nodes[k];
            assignment[v] += 1;
            if assignment[v] < structure.space(v).len() {
                break;
            }
            assignment[v] = 0;
        }
    }
}
