//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use credal::bayesnet::BayesNet;
use credal::credal_set::CredalSet;
use credal::credalnet::CredalNet;
use credal::graph::Dag;
use credal::network::{Evidence, Structure};
use credal::observation::MultiValuedMap;
use credal::space::{FiniteSpace, Gamble, MassFunction};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A strictly positive probability vector of length `n`.
pub fn positive_probs(rng: &mut StdRng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|v| v / total).collect()
}

/// A probability vector that may contain zeros.
pub fn sparse_probs(rng: &mut StdRng, n: usize) -> Vec<f64> {
    loop {
        let raw: Vec<f64> =
            (0..n).map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.05..1.0) }).collect();
        let total: f64 = raw.iter().sum();
        if total > 0.0 {
            return raw.iter().map(|v| v / total).collect();
        }
    }
}

pub fn mass(space: &Arc<FiniteSpace>, probs: Vec<f64>) -> MassFunction {
    MassFunction::new(space.clone(), probs).unwrap()
}

pub fn gamble(rng: &mut StdRng, space: &Arc<FiniteSpace>) -> Gamble {
    let values = (0..space.len()).map(|_| rng.gen_range(-5.0..5.0)).collect();
    Gamble::new(space.clone(), values).unwrap()
}

pub fn random_structure(rng: &mut StdRng, max_nodes: usize, max_states: usize, arc_prob: f64) -> Structure {
    let n = rng.gen_range(2..=max_nodes);
    let spaces: Vec<Arc<FiniteSpace>> = (0..n)
        .map(|v| {
            let k = rng.gen_range(2..=max_states);
            FiniteSpace::new(format!("N{v}"), (0..k).map(|s| format!("n{v}s{s}"))).unwrap()
        })
        .collect();
    let mut arcs = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(arc_prob) {
                arcs.push((i, j));
            }
        }
    }
    Structure::new(spaces, Dag::from_arcs(n, &arcs).unwrap()).unwrap()
}

pub fn random_bayes_net(rng: &mut StdRng, max_nodes: usize, max_states: usize, arc_prob: f64) -> BayesNet {
    let s = random_structure(rng, max_nodes, max_states, arc_prob);
    let cpt = (0..s.len())
        .map(|v| {
            let space = s.space(v).clone();
            (0..s.row_count(v)).map(|_| mass(&space, positive_probs(rng, space.len()))).collect()
        })
        .collect();
    BayesNet::new(s, cpt).unwrap()
}

/// A random class node and partial evidence on the others.
pub fn random_query(rng: &mut StdRng, s: &Structure, observe: f64) -> (usize, Evidence) {
    let class = rng.gen_range(0..s.len());
    let values = (0..s.len())
        .map(|v| {
            if v != class && rng.gen_bool(observe) {
                Some(rng.gen_range(0..s.space(v).len()))
            } else {
                None
            }
        })
        .collect();
    (class, Evidence::from_values(values))
}

/// A credal net whose rows are one- or two-vertex sets, with at most
/// `max_combinations` joint vertex choices overall.
pub fn random_vertex_net(
    rng: &mut StdRng,
    max_nodes: usize,
    max_states: usize,
    arc_prob: f64,
    max_combinations: u64,
) -> CredalNet {
    let s = random_structure(rng, max_nodes, max_states, arc_prob);
    let mut budget = max_combinations;
    let tables = (0..s.len())
        .map(|v| {
            let space = s.space(v).clone();
            (0..s.row_count(v))
                .map(|_| {
                    let k = if budget >= 2 && rng.gen_bool(0.6) {
                        budget /= 2;
                        2
                    } else {
                        1
                    };
                    let vs = (0..k).map(|_| mass(&space, positive_probs(rng, space.len()))).collect();
                    CredalSet::vertices(space.clone(), vs).unwrap()
                })
                .collect()
        })
        .collect();
    CredalNet::new(s, tables).unwrap()
}

/// A multi-valued map on `n` states with every observation reachable.
pub fn random_map(rng: &mut StdRng, n: usize, m: usize) -> MultiValuedMap {
    let x = FiniteSpace::indexed("X", n).unwrap();
    let o = FiniteSpace::indexed("O", m).unwrap();
    loop {
        let gamma: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                let mut img: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.4)).collect();
                if img.is_empty() {
                    img.push(rng.gen_range(0..m));
                }
                img
            })
            .collect();
        if let Ok(map) = MultiValuedMap::new(x.clone(), o.clone(), gamma) {
            return map;
        }
    }
}

/// A random credal set of the given kind: 0 linear, 1 vertices,
/// 2 reachable intervals, 3 polytope.
pub fn random_credal_set(rng: &mut StdRng, space: &Arc<FiniteSpace>, kind: usize) -> CredalSet {
    let n = space.len();
    match kind {
        0 => CredalSet::linear(mass(space, positive_probs(rng, n))),
        1 => {
            let k = rng.gen_range(1..=4);
            let vs = (0..k).map(|_| mass(space, sparse_probs(rng, n))).collect();
            CredalSet::vertices(space.clone(), vs).unwrap()
        }
        2 => {
            // Intervals around a centre, tightened to be reachable.
            let centre = positive_probs(rng, n);
            let lo: Vec<f64> = centre.iter().map(|p| (p - rng.gen_range(0.0..0.1)).max(0.0)).collect();
            let up: Vec<f64> = centre.iter().map(|p| (p + rng.gen_range(0.0..0.1)).min(1.0)).collect();
            let sl: f64 = lo.iter().sum();
            let su: f64 = up.iter().sum();
            let lower = (0..n).map(|i| lo[i].max(1.0 - (su - up[i]))).collect();
            let upper = (0..n).map(|i| up[i].min(1.0 - (sl - lo[i]))).collect();
            CredalSet::intervals(space.clone(), lower, upper).unwrap()
        }
        _ => {
            use credal::lp::{Constraint, Relation};
            let centre = positive_probs(rng, n);
            let cs = (0..n)
                .map(|i| {
                    let mut coeffs = vec![0.0; n];
                    coeffs[i] = 1.0;
                    Constraint::new(coeffs, Relation::Ge, centre[i] * 0.5)
                })
                .chain(std::iter::once(Constraint::new(
                    (0..n).map(|i| if i % 2 == 0 { 1.0 } else { 0.0 }).collect(),
                    Relation::Le,
                    centre.iter().step_by(2).sum::<f64>() + 0.05,
                )))
                .collect();
            CredalSet::polytope(space.clone(), cs).unwrap()
        }
    }
}
