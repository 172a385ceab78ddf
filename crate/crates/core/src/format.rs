//! JSON network and query files.
//!
//! ```json
//! {
//!   "version": 1,
//!   "kind": "bayesian",
//!   "nodes": [{ "name": "A", "states": ["a0", "a1"] },
//!             { "name": "B", "states": ["b0", "b1"] }],
//!   "arcs": [["A", "B"]],
//!   "tables": {
//!     "A": [[0.3, 0.7]],
//!     "B": [[0.9, 0.1], [0.2, 0.8]]
//!   }
//! }
//! ```
//!
//! A node's parents are the sources of the arcs into it, in the order those
//! arcs are listed. Its table has one row per parent configuration, with the
//! last parent varying fastest. Row probabilities must sum to 1 within 1e-9;
//! nothing is renormalised.
//!
//! In a `"credal"` file a row may also be one of
//! `{"vertices": [[..], ..]}`, `{"intervals": {"lower": [..], "upper": [..]}}`
//! or `{"polytope": [{"coeffs": [..], "relation": ">=", "rhs": 0.1}, ..]}`;
//! a plain array is a single mass function.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bayesnet::BayesNet;
use crate::credal_set::{CredalSet, Representation};
use crate::credalnet::CredalNet;
use crate::dominance::DEFAULT_CAP;
use crate::graph::Dag;
use crate::lp::Constraint;
use crate::network::{Evidence, Structure};
use crate::space::{FiniteSpace, MassFunction, TOL};

pub const FORMAT_VERSION: u32 = 1;

/// The Asia network, bundled.
pub const ASIA_JSON: &str = include_str!("../data/asia.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub version: u32,
    pub kind: NetworkKind,
    pub nodes: Vec<NodeDecl>,
    pub arcs: Vec<(String, String)>,
    pub tables: BTreeMap<String, Vec<RowSpec>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NetworkKind {
    Bayesian,
    Credal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDecl {
    pub name: String,
    pub states: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RowSpec {
    Precise(Vec<f64>),
    Credal(CredalRow),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum CredalRow {
    Vertices(Vec<Vec<f64>>),
    Intervals { lower: Vec<f64>, upper: Vec<f64> },
    Polytope(Vec<Constraint>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Bayesian(BayesNet),
    Credal(CredalNet),
}

impl Model {
    pub fn structure(&self) -> &Structure {
        match self {
            Model::Bayesian(n) => n.structure(),
            Model::Credal(n) => n.structure(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
}

fn invalid(location: impl Into<String>, message: impl ToString) -> FormatError {
    FormatError::Invalid { location: location.into(), message: message.to_string() }
}

fn syntax(e: serde_json::Error) -> FormatError {
    FormatError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
}

pub fn parse_network(text: &str) -> Result<Model, FormatError> {
    let file: NetworkFile = serde_json::from_str(text).map_err(syntax)?;
    build(&file)
}

pub fn build(file: &NetworkFile) -> Result<Model, FormatError> {
    if file.version != FORMAT_VERSION {
        return Err(invalid("version", format!("unsupported version {}", file.version)));
    }
    let spaces: Vec<Arc<FiniteSpace>> = file
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            FiniteSpace::new(n.name.clone(), n.states.clone()).map_err(|e| invalid(format!("nodes[{i}]"), e))
        })
        .collect::<Result<_, _>>()?;
    let index = |name: &str, at: String| {
        file.nodes
            .iter()
            .position(|n| n.name == name)
            .ok_or_else(|| invalid(at, format!("unknown node `{name}`")))
    };
    let mut arcs = Vec::with_capacity(file.arcs.len());
    for (i, (from, to)) in file.arcs.iter().enumerate() {
        arcs.push((index(from, format!("arcs[{i}]"))?, index(to, format!("arcs[{i}]"))?));
    }
    let dag = Dag::from_arcs(spaces.len(), &arcs).map_err(|e| invalid("arcs", e))?;
    let structure = Structure::new(spaces, dag).map_err(|e| invalid("nodes", e))?;
    for name in file.tables.keys() {
        index(name, format!("tables.{name}"))?;
    }

    let mut precise = Vec::new();
    let mut credal = Vec::new();
    for v in 0..structure.len() {
        let name = structure.name(v);
        let rows = file.tables.get(name).ok_or_else(|| invalid(format!("tables.{name}"), "missing table"))?;
        let expected = structure.row_count(v);
        if rows.len() != expected {
            return Err(invalid(
                format!("tables.{name}"),
                format!("expected {expected} rows, found {}", rows.len()),
            ));
        }
        let space = structure.space(v);
        let mut node_precise = Vec::new();
        let mut node_credal = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            let at = format!("tables.{name}[{r}]");
            let mass = |p: &Vec<f64>| {
                MassFunction::with_tolerance(space.clone(), p.clone(), TOL).map_err(|e| invalid(&at, e))
            };
            match (file.kind, row) {
                (NetworkKind::Bayesian, RowSpec::Precise(p)) => {
                    check_positive(p, &at)?;
                    node_precise.push(mass(p)?);
                }
                (NetworkKind::Bayesian, RowSpec::Credal(_)) => {
                    return Err(invalid(at, "credal rows need \"kind\": \"credal\""));
                }
                (NetworkKind::Credal, RowSpec::Precise(p)) => {
                    node_credal.push(CredalSet::linear(mass(p)?));
                }
                (NetworkKind::Credal, RowSpec::Credal(CredalRow::Vertices(vs))) => {
                    let vs = vs.iter().map(mass).collect::<Result<Vec<_>, _>>()?;
                    node_credal.push(CredalSet::vertices(space.clone(), vs).map_err(|e| invalid(&at, e))?);
                }
                (NetworkKind::Credal, RowSpec::Credal(CredalRow::Intervals { lower, upper })) => {
                    node_credal.push(
                        CredalSet::intervals(space.clone(), lower.clone(), upper.clone())
                            .map_err(|e| invalid(&at, e))?,
                    );
                }
                (NetworkKind::Credal, RowSpec::Credal(CredalRow::Polytope(cs))) => {
                    node_credal
                        .push(CredalSet::polytope(space.clone(), cs.clone()).map_err(|e| invalid(&at, e))?);
                }
            }
        }
        precise.push(node_precise);
        credal.push(node_credal);
    }
    match file.kind {
        NetworkKind::Bayesian => {
            BayesNet::new(structure, precise).map(Model::Bayesian).map_err(|e| invalid("tables", e))
        }
        NetworkKind::Credal => {
            CredalNet::new(structure, credal).map(Model::Credal).map_err(|e| invalid("tables", e))
        }
    }
}

fn check_positive(p: &[f64], at: &str) -> Result<(), FormatError> {
    match p.iter().position(|&x| x <= 0.0) {
        Some(k) => Err(invalid(at, format!("entry {k} is {} but must be positive", p[k]))),
        None => Ok(()),
    }
}

/// The file describing a model; parsing it yields an equal model.
pub fn to_file(model: &Model) -> NetworkFile {
    let s = model.structure();
    let nodes = (0..s.len())
        .map(|v| NodeDecl { name: s.name(v).to_string(), states: s.space(v).elements().to_vec() })
        .collect();
    let arcs = (0..s.len())
        .flat_map(|v| s.dag().parents(v).iter().map(move |&p| (s.name(p).to_string(), s.name(v).to_string())))
        .collect();
    let mut tables = BTreeMap::new();
    for v in 0..s.len() {
        let rows: Vec<RowSpec> = match model {
            Model::Bayesian(n) => n.table(v).iter().map(|m| RowSpec::Precise(m.probs().to_vec())).collect(),
            Model::Credal(n) => n.table(v).iter().map(row_spec).collect(),
        };
        tables.insert(s.name(v).to_string(), rows);
    }
    NetworkFile {
        version: FORMAT_VERSION,
        kind: match model {
            Model::Bayesian(_) => NetworkKind::Bayesian,
            Model::Credal(_) => NetworkKind::Credal,
        },
        nodes,
        arcs,
        tables,
    }
}

fn row_spec(set: &CredalSet) -> RowSpec {
    match set.representation() {
        Representation::Linear(m) => RowSpec::Precise(m.probs().to_vec()),
        Representation::Vertices(vs) => {
            RowSpec::Credal(CredalRow::Vertices(vs.iter().map(|m| m.probs().to_vec()).collect()))
        }
        Representation::Intervals { lower, upper } => {
            RowSpec::Credal(CredalRow::Intervals { lower: lower.clone(), upper: upper.clone() })
        }
        Representation::Polytope(cs) => RowSpec::Credal(CredalRow::Polytope(cs.clone())),
    }
}

pub fn serialize_network(model: &Model) -> String {
    serde_json::to_string_pretty(&to_file(model)).expect("network files always serialise")
}

/// The bundled Asia network.
pub fn asia() -> BayesNet {
    match parse_network(ASIA_JSON) {
        Ok(Model::Bayesian(net)) => net,
        other => panic!("bundled Asia network is invalid: {other:?}"),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryFile {
    pub class: String,
    #[serde(default)]
    pub evidence: BTreeMap<String, String>,
    #[serde(default)]
    pub bounds: bool,
    #[serde(default)]
    pub naive: bool,
    #[serde(default = "default_cap")]
    pub cap: u128,
}

fn default_cap() -> u128 {
    DEFAULT_CAP
}

pub fn parse_query(text: &str) -> Result<QueryFile, FormatError> {
    serde_json::from_str(text).map_err(syntax)
}

impl QueryFile {
    /// Resolves the class node and evidence against a network.
    pub fn resolve(&self, structure: &Structure) -> Result<(usize, Evidence), FormatError> {
        let class = structure.node(&self.class).map_err(|e| invalid("class", e))?;
        let pairs: Vec<(&str, &str)> = self.evidence.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
        let evidence = structure.evidence(&pairs).map_err(|e| invalid("evidence", e))?;
        structure.check_query(class, &evidence).map_err(|e| invalid("evidence", e))?;
        Ok((class, evidence))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = r#"{
        "version": 1, "kind": "bayesian",
        "nodes": [{"name": "A", "states": ["a0", "a1"]}, {"name": "B", "states": ["b0", "b1"]}],
        "arcs": [["A", "B"]],
        "tables": {"A": [[0.3, 0.7]], "B": [[0.9, 0.1], [0.2, 0.8]]}
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let m = parse_network(TWO).unwrap();
        let again = parse_network(&serialize_network(&m)).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn short_row_sum_names_the_row() {
        let bad = TWO.replace("[0.2, 0.8]", "[0.2, 0.799]");
        match parse_network(&bad) {
            Err(FormatError::Invalid { location, message }) => {
                assert_eq!(location, "tables.B[1]");
                assert!(message.contains("0.999"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        assert!(matches!(
            parse_network("{\"version\": 1,\n  oops}"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn credal_rows_need_credal_kind() {
        let bad = TWO.replace("[[0.3, 0.7]]", r#"[{"vertices": [[0.3, 0.7]]}]"#);
        assert!(matches!(parse_network(&bad), Err(FormatError::Invalid { .. })));
        let ok = bad.replace("bayesian", "credal");
        assert!(matches!(parse_network(&ok), Ok(Model::Credal(_))));
    }

    #[test]
    fn unreachable_intervals_are_rejected() {
        let bad = TWO
            .replace("bayesian", "credal")
            .replace("[[0.3, 0.7]]", r#"[{"intervals": {"lower": [0.5, 0.6], "upper": [0.9, 0.9]}}]"#);
        assert!(
            matches!(parse_network(&bad), Err(FormatError::Invalid { location, .. }) if location == "tables.A[0]")
        );
    }

    #[test]
    fn bundled_asia_matches_the_tables() {
        let net = asia();
        let s = net.structure();
        let v = s.node("V").unwrap();
        assert_eq!(net.table(v)[0].probs(), &[0.01, 0.99]);
        let d = s.node("D").unwrap();
        let rows: Vec<f64> = net.table(d).iter().map(|m| m.prob(0)).collect();
        assert_eq!(rows, vec![0.9, 0.7, 0.9, 0.7, 0.9, 0.7, 0.8, 0.1]);
    }
}
