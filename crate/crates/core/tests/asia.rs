use credal::credalnet::CredalNet;
use credal::format::asia;
use credal::network::Evidence;
use credal::observation::cur_posterior;
use credal::oracle::{brute_credal_min_ratio, brute_min_ratio, ORACLE_CAP};
use credal::space::Gamble;

const CAP: u128 = 1 << 20;

fn query(pairs: &[(&str, &str)]) -> (credal::bayesnet::BayesNet, usize, Evidence) {
    let net = asia();
    let c = net.structure().node("C").unwrap();
    let e = net.structure().evidence(pairs).unwrap();
    (net, c, e)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12
}

#[test]
fn cutset_is_tuberculosis() {
    let (net, c, e) = query(&[("L", "l'"), ("S", "s'")]);
    let report = net.classify(c, &e, CAP).unwrap();
    assert_eq!(report.cutset, vec!["T".to_string()]);
    assert_eq!(report.cutset_assignments, 2);
}

#[test]
fn per_cutset_factors() {
    let (net, c, e) = query(&[("L", "l'"), ("S", "s'")]);
    let t = net.credal_dominance(c, 0, 1, &e, CAP).unwrap();
    assert_eq!(t.terms.len(), 2);
    let names = |k: usize| t.terms[k].factors.iter().map(|f| f.node.clone()).collect::<Vec<_>>();
    assert_eq!(names(0), vec!["C", "L", "D"]);
    let vals = |k: usize| t.terms[k].factors.iter().map(|f| f.value).collect::<Vec<_>>();
    let (a, b) = (vals(0), vals(1));
    assert!(close(a[0], 1.0 / 9.0) && close(a[1], 1.0) && close(a[2], 1.0));
    assert!(close(b[0], 1.0 / 9.0) && close(b[1], 98.0 / 5.0) && close(b[2], 1.0 / 3.0));
    assert!(close(t.terms[0].product, 1.0 / 9.0));
    assert!(close(t.terms[1].product, 98.0 / 135.0));
    assert!(close(t.value, 1.0 / 9.0));
    assert!(!t.dominates);
}

#[test]
fn reverse_test_value() {
    let (net, c, e) = query(&[("L", "l'"), ("S", "s'")]);
    let t = net.credal_dominance(c, 1, 0, &e, CAP).unwrap();
    assert!(close(t.value, 45.0 / 686.0));
    assert!(!t.dominates);
    assert!(close(brute_min_ratio(&net, c, 1, 0, &e, ORACLE_CAP).unwrap(), 45.0 / 686.0));
    assert!(close(brute_min_ratio(&net, c, 0, 1, &e, ORACLE_CAP).unwrap(), 1.0 / 9.0));
}

#[test]
fn suspension_of_judgement_and_exclusion() {
    let (net, c, e) = query(&[("L", "l'"), ("S", "s'")]);
    let r = net.classify(c, &e, CAP).unwrap();
    assert_eq!(r.undominated, vec!["c'", "c''"]);
    assert_eq!(r.relations.len(), 1);
    assert_eq!(r.relations[0].kind, credal::decision::Comparison::Incomparable);

    let (net, c, e) = query(&[("L", "l'"), ("S", "s'"), ("T", "t'")]);
    let r = net.classify(c, &e, CAP).unwrap();
    assert_eq!(r.undominated, vec!["c''"]);
    assert!(r.matrix[1][0]);
}

#[test]
fn posterior_interval_and_naive_value() {
    let (net, c, e) = query(&[("L", "l'"), ("S", "s'")]);
    let b = net.posterior_bounds(c, &e, CAP).unwrap();
    assert!(close(b[0].lower, 0.1));
    assert!(close(b[0].upper, 686.0 / 731.0));
    let n = net.naive_posterior(c, &e, CAP).unwrap();
    assert!((n[0].value - 0.646).abs() < 1e-3);
    assert!(b[0].lower <= n[0].value && n[0].value <= b[0].upper);
}

#[test]
fn conservative_rule_lower_endpoint() {
    let (net, c, e) = query(&[("L", "l'"), ("S", "s'")]);
    let family = net.class_conditional(c, CAP).unwrap();
    let pattern = net.pattern(c, &e).unwrap();
    let f = Gamble::indicator(net.structure().space(c).clone(), &[0]);
    assert!(close(cur_posterior(&family, &pattern, &f).unwrap(), 0.1));
    let upper = -cur_posterior(&family, &pattern, &-&f).unwrap();
    assert!(close(upper, 686.0 / 731.0));
}

#[test]
fn joint_mass_of_one_assignment() {
    let net = asia();
    // (v'', s', t'', c', h', l', d')
    let p = net.joint_mass(&[1, 0, 1, 0, 0, 0, 0]).unwrap();
    assert!(close(p, 0.99 * 0.5 * 0.99 * 0.1 * 0.6 * 0.98 * 0.9));
}

#[test]
fn degenerate_credal_asia_matches() {
    let (net, c, e) = query(&[("L", "l'"), ("S", "s'")]);
    let cn = CredalNet::degenerate(&net);
    let t = cn.credal_dominance(c, 0, 1, &e, CAP).unwrap();
    assert!(close(t.terms[0].product, 1.0 / 9.0));
    assert!(close(t.terms[1].product, 98.0 / 135.0));
    let r = cn.credal_dominance(c, 1, 0, &e, CAP).unwrap();
    assert!(close(r.value, 45.0 / 686.0));
    assert!(close(brute_credal_min_ratio(&cn, c, 1, 0, &e, ORACLE_CAP).unwrap(), 45.0 / 686.0));
    let (_, _, e3) = query(&[("L", "l'"), ("S", "s'"), ("T", "t'")]);
    assert_eq!(cn.classify(c, &e3, CAP).unwrap().undominated, vec!["c''"]);
}
