//! Credal-dominance testing by products of local ratio minima, with loop
//! cutset conditioning. Shared by Bayesian and credal networks.

use serde::Serialize;

use crate::decision::Comparison;
use crate::error::{Error, Result};
use crate::network::{for_each_assignment, Evidence, Structure};
use crate::space::TOL;

/// Default bound on the number of cutset assignments or completions a
/// single query may enumerate.
pub const DEFAULT_CAP: u128 = 1 << 20;

/// The per-node quantities a dominance test needs from a network.
pub trait LocalRatios {
    fn structure(&self) -> &Structure;

    /// Minimum of `p(num | row) / p(den | row)` over the class node's local model.
    fn class_ratio(&self, node: usize, row: usize, num: usize, den: usize) -> Result<f64>;

    /// Lower bound of `p(state | row_num) / p(state | row_den)` for a child
    /// of the class node.
    fn child_ratio(&self, node: usize, row_num: usize, row_den: usize, state: usize) -> Result<f64>;
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Factor {
    pub node: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutsetTerm {
    /// `(node, state)` for every cutset node.
    pub assignment: Vec<(String, String)>,
    pub factors: Vec<Factor>,
    pub product: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairTest {
    pub dominant: String,
    pub dominated: String,
    /// Minimum over cutset assignments of the factor product.
    pub value: f64,
    pub dominates: bool,
    pub terms: Vec<CutsetTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Relation {
    pub first: String,
    pub second: String,
    pub kind: Comparison,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Interval {
    pub class: String,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Point {
    pub class: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceReport {
    pub class_node: String,
    pub classes: Vec<String>,
    pub evidence: Vec<(String, String)>,
    pub cutset: Vec<String>,
    /// Number of cutset assignments enumerated per pair.
    pub cutset_assignments: u128,
    /// `matrix[i][j]`: class `i` strictly dominates class `j`.
    pub matrix: Vec<Vec<bool>>,
    pub undominated: Vec<String>,
    pub relations: Vec<Relation>,
    pub tests: Vec<PairTest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub posterior_bounds: Option<Vec<Interval>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub naive_posterior: Option<Vec<Point>>,
}

/// Factors `(node, μ)` for one fully fixed cutset, class factor first, then
/// children of the class in index order. `fixed` holds evidence and cutset
/// values.
pub fn mu_factors<N: LocalRatios + ?Sized>(
    net: &N,
    class: usize,
    num: usize,
    den: usize,
    fixed: &Evidence,
) -> Result<Vec<(usize, f64)>> {
    let s = net.structure();
    let dag = s.dag();
    let reduced = dag.without_out_arcs(&fixed.observed());
    if !reduced.is_singly_connected(&reduced.markov_blanket_plus(class)) {
        return Err(Error::NotSinglyConnected);
    }
    let mut assignment: Vec<usize> = fixed.values().iter().map(|v| v.unwrap_or(0)).collect();
    let free = |v: usize| v != class && fixed.get(v).is_none();

    let mut factors = Vec::with_capacity(1 + dag.children(class).len());
    let free_parents: Vec<usize> = dag.parents(class).iter().copied().filter(|&p| free(p)).collect();
    let mut mu = f64::INFINITY;
    for_each_assignment(s, &free_parents, &mut assignment, |a| {
        let row = s.row_with(class, |p| a[p]);
        mu = mu.min(net.class_ratio(class, row, num, den)?);
        Ok(())
    })?;
    factors.push((class, mu));

    for &child in dag.children(class) {
        let mut vars: Vec<usize> = dag.parents(child).iter().copied().filter(|&p| free(p)).collect();
        if free(child) {
            vars.push(child);
        }
        let mut mu = f64::INFINITY;
        for_each_assignment(s, &vars, &mut assignment, |a| {
            let row_num = s.row_with(child, |p| if p == class { num } else { a[p] });
            let row_den = s.row_with(child, |p| if p == class { den } else { a[p] });
            mu = mu.min(net.child_ratio(child, row_num, row_den, a[child])?);
            Ok(())
        })?;
        factors.push((child, mu));
    }
    Ok(factors)
}

/// The product of [`mu_factors`].
pub fn mu_product<N: LocalRatios + ?Sized>(
    net: &N,
    class: usize,
    num: usize,
    den: usize,
    fixed: &Evidence,
) -> Result<f64> {
    Ok(mu_factors(net, class, num, den, fixed)?.iter().map(|(_, m)| m).product())
}

/// Dominance of class state `num` over `den`: the minimum over all
/// assignments of `cutset` of the factor product, compared strictly with 1.
pub fn pair_test<N: LocalRatios + ?Sized>(
    net: &N,
    class: usize,
    num: usize,
    den: usize,
    evidence: &Evidence,
    cutset: &[usize],
    cap: u128,
) -> Result<PairTest> {
    let s = net.structure();
    s.check_query(class, evidence)?;
    let count = s.configurations(cutset);
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    let mut assignment: Vec<usize> = evidence.values().iter().map(|v| v.unwrap_or(0)).collect();
    let mut terms = Vec::new();
    for_each_assignment(s, cutset, &mut assignment, |a| {
        let mut fixed = evidence.clone();
        for &v in cutset {
            fixed = fixed.with(v, a[v]);
        }
        let factors = mu_factors(net, class, num, den, &fixed)?;
        let product = factors.iter().map(|(_, m)| m).product();
        terms.push(CutsetTerm {
            assignment: cutset
                .iter()
                .map(|&v| (s.name(v).to_string(), s.space(v).label(a[v]).to_string()))
                .collect(),
            factors: factors
                .into_iter()
                .map(|(v, value)| Factor { node: s.name(v).to_string(), value })
                .collect(),
            product,
        });
        Ok(())
    })?;
    let value = terms.iter().map(|t| t.product).fold(f64::INFINITY, f64::min);
    let classes = s.space(class);
    Ok(PairTest {
        dominant: classes.label(num).to_string(),
        dominated: classes.label(den).to_string(),
        value,
        dominates: value > 1.0,
        terms,
    })
}

/// Loop cutset for a query: empty when `B⁺` is already singly connected.
pub fn query_cutset<N: LocalRatios + ?Sized>(net: &N, class: usize, evidence: &Evidence) -> Vec<usize> {
    net.structure().dag().find_loop_cutset(class, &evidence.observed())
}

/// Dominance test between two class states with an automatically chosen
/// cutset.
pub fn dominance<N: LocalRatios + ?Sized>(
    net: &N,
    class: usize,
    num: usize,
    den: usize,
    evidence: &Evidence,
    cap: u128,
) -> Result<PairTest> {
    net.structure().check_query(class, evidence)?;
    let cutset = query_cutset(net, class, evidence);
    pair_test(net, class, num, den, evidence, &cutset, cap)
}

/// Every ordered pair of class states, the undominated set, and the
/// equivalent/incomparable label of every surviving pair.
pub fn classify_with<N: LocalRatios + ?Sized>(
    net: &N,
    class: usize,
    evidence: &Evidence,
    cap: u128,
) -> Result<DominanceReport> {
    let s = net.structure();
    s.check_query(class, evidence)?;
    let cutset = query_cutset(net, class, evidence);
    let k = s.space(class).len();
    let mut matrix = vec![vec![false; k]; k];
    let mut values = vec![vec![1.0; k]; k];
    let mut tests = Vec::with_capacity(k * k.saturating_sub(1));
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            let t = pair_test(net, class, a, b, evidence, &cutset, cap)?;
            matrix[a][b] = t.dominates;
            values[a][b] = t.value;
            tests.push(t);
        }
    }
    let survivors: Vec<usize> = (0..k).filter(|&b| (0..k).all(|a| !matrix[a][b])).collect();
    let labels = s.space(class);
    let mut relations = Vec::new();
    for (i, &a) in survivors.iter().enumerate() {
        for &b in &survivors[i + 1..] {
            // Equal posteriors under every completion: both ratio minima are 1.
            let kind = if values[a][b] >= 1.0 - TOL && values[b][a] >= 1.0 - TOL {
                Comparison::Equivalent
            } else {
                Comparison::Incomparable
            };
            relations.push(Relation {
                first: labels.label(a).to_string(),
                second: labels.label(b).to_string(),
                kind,
            });
        }
    }
    Ok(DominanceReport {
        class_node: s.name(class).to_string(),
        classes: labels.elements().to_vec(),
        evidence: evidence
            .observed()
            .into_iter()
            .map(|v| (s.name(v).to_string(), s.space(v).label(evidence.get(v).unwrap()).to_string()))
            .collect(),
        cutset: cutset.iter().map(|&v| s.name(v).to_string()).collect(),
        cutset_assignments: s.configurations(&cutset),
        matrix,
        undominated: survivors.iter().map(|&c| labels.label(c).to_string()).collect(),
        relations,
        tests,
        posterior_bounds: None,
        naive_posterior: None,
    })
}
