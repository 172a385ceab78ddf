mod common;

use credal::bayesnet::BayesNet;
use credal::credal_set::CredalSet;
use credal::credalnet::CredalNet;
use credal::dominance::DEFAULT_CAP;
use credal::network::Evidence;
use credal::oracle::{brute_credal_min_ratio, brute_min_ratio, ORACLE_CAP};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

use common::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

/// Each precise row replaced by intervals `p ± w`, where `w` is `width`
/// capped at half the row's smallest mass so bounds stay positive and
/// reachable.
fn widen(net: &BayesNet, width: f64) -> CredalNet {
    let s = net.structure();
    let tables = (0..s.len())
        .map(|v| {
            net.table(v)
                .iter()
                .map(|row| {
                    let p = row.probs();
                    let w = p.iter().fold(width, |w, x| w.min(x / 2.0));
                    let lower = p.iter().map(|x| x - w).collect();
                    let upper = p.iter().map(|x| (x + w).min(1.0)).collect();
                    CredalSet::intervals(s.space(v).clone(), lower, upper).unwrap()
                })
                .collect()
        })
        .collect();
    CredalNet::new(s.clone(), tables).unwrap()
}

fn small_net(r: &mut StdRng) -> (BayesNet, usize, Evidence) {
    let net = random_bayes_net(r, 6, 3, 0.4);
    let observe = r.gen_range(0.2..0.8);
    let (class, ev) = random_query(r, net.structure(), observe);
    (net, class, ev)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn fast_test_matches_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (net, class, ev) = small_net(&mut r);
        let k = net.structure().space(class).len();
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    let fast = net.credal_dominance(class, a, b, &ev, DEFAULT_CAP).unwrap().value;
                    let brute = brute_min_ratio(&net, class, a, b, &ev, ORACLE_CAP).unwrap();
                    prop_assert!(close(fast, brute), "{fast} vs {brute}");
                }
            }
        }
    }

    #[test]
    fn degenerate_credal_net_agrees(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (net, class, ev) = small_net(&mut r);
        let cnet = CredalNet::degenerate(&net);
        let precise = net.classify(class, &ev, DEFAULT_CAP).unwrap();
        let credal = cnet.classify(class, &ev, DEFAULT_CAP).unwrap();
        prop_assert_eq!(&precise.matrix, &credal.matrix);
        for (p, c) in precise.tests.iter().zip(&credal.tests) {
            prop_assert!(close(p.value, c.value));
        }
    }

    #[test]
    fn widening_never_creates_dominance(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (net, class, ev) = small_net(&mut r);
        let narrow = net.classify(class, &ev, DEFAULT_CAP).unwrap();
        let wide = widen(&net, 0.05).classify(class, &ev, DEFAULT_CAP).unwrap();
        for (p, w) in narrow.tests.iter().zip(&wide.tests) {
            prop_assert!(w.value <= p.value + 1e-9);
        }
        for i in 0..narrow.matrix.len() {
            for j in 0..narrow.matrix.len() {
                prop_assert!(!wide.matrix[i][j] || narrow.matrix[i][j]);
            }
        }
        for c in &narrow.undominated {
            prop_assert!(wide.undominated.contains(c));
        }
    }

    #[test]
    fn dominance_is_a_strict_partial_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (net, class, ev) = small_net(&mut r);
        let report = widen(&net, 0.02).classify(class, &ev, DEFAULT_CAP).unwrap();
        let m = &report.matrix;
        let k = m.len();
        prop_assert!(!report.undominated.is_empty());
        for i in 0..k {
            prop_assert!(!m[i][i]);
            for j in 0..k {
                prop_assert!(!(m[i][j] && m[j][i]));
                for l in 0..k {
                    prop_assert!(!(m[i][j] && m[j][l]) || m[i][l]);
                }
            }
        }
        for (c, label) in report.classes.iter().enumerate() {
            let dominated = (0..k).any(|d| m[d][c]);
            prop_assert_eq!(dominated, !report.undominated.contains(label));
        }
    }

    #[test]
    fn bounds_contain_the_naive_posterior(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (net, class, ev) = small_net(&mut r);
        let bounds = net.posterior_bounds(class, &ev, DEFAULT_CAP).unwrap();
        let naive = net.naive_posterior(class, &ev, DEFAULT_CAP).unwrap();
        for (b, p) in bounds.iter().zip(&naive) {
            prop_assert!(b.lower - 1e-12 <= p.value && p.value <= b.upper + 1e-12);
        }
        // A class whose upper bound lies below another's lower bound is dominated.
        let report = net.classify(class, &ev, DEFAULT_CAP).unwrap();
        for (i, bi) in bounds.iter().enumerate() {
            for (j, bj) in bounds.iter().enumerate() {
                if bi.lower > bj.upper + 1e-9 {
                    prop_assert!(report.matrix[i][j]);
                }
            }
        }
    }

    #[test]
    fn cutting_evidence_arcs_preserves_ratios(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (net, class, ev) = small_net(&mut r);
        let cut = net.remove_evidence_arcs(&ev).unwrap();
        let k = net.structure().space(class).len();
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    let before = brute_min_ratio(&net, class, a, b, &ev, ORACLE_CAP).unwrap();
                    let after = brute_min_ratio(&cut, class, a, b, &ev, ORACLE_CAP).unwrap();
                    prop_assert!(close(before, after), "{before} vs {after}");
                }
            }
        }
    }

    #[test]
    fn credal_test_matches_vertex_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let net = random_vertex_net(&mut r, 5, 3, 0.4, 64);
        let (class, ev) = random_query(&mut r, net.structure(), 0.5);
        let k = net.structure().space(class).len();
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    let fast = net.credal_dominance(class, a, b, &ev, DEFAULT_CAP).unwrap().value;
                    let brute = brute_credal_min_ratio(&net, class, a, b, &ev, DEFAULT_CAP).unwrap();
                    prop_assert!(close(fast, brute), "{fast} vs {brute}");
                }
            }
        }
    }
}

#[test]
fn widened_asia_matches_vertex_enumeration() {
    let asia = credal::format::asia();
    let s = asia.structure();
    let class = s.node("C").unwrap();
    let ev = s.evidence(&[("L", "l'"), ("S", "s'"), ("T", "t'")]).unwrap();
    let wide = widen(&asia, 0.01);
    let fast = wide.credal_dominance(class, 1, 0, &ev, DEFAULT_CAP).unwrap().value;
    let brute = brute_credal_min_ratio(&wide, class, 1, 0, &ev, DEFAULT_CAP).unwrap();
    assert!(close(fast, brute), "{fast} vs {brute}");
    let precise = asia.credal_dominance(class, 1, 0, &ev, DEFAULT_CAP).unwrap().value;
    assert!(fast < precise);
}
