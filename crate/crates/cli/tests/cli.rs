use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn asia_path() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/asia.json").to_string()
}

fn credal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_credal")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Writes `text` to a per-test file in the system temp directory.
fn scratch(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("credal-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

const TWO_NODE: &str = r#"{
  "version": 1, "kind": "bayesian",
  "nodes": [{"name": "A", "states": ["a0", "a1"]}, {"name": "B", "states": ["b0", "b1"]}],
  "arcs": [["A", "B"]],
  "tables": {"A": [[0.3, 0.7]], "B": [[0.9, 0.1], [0.2, 0.8]]}
}"#;

#[test]
fn classify_asia_table() {
    let net = asia_path();
    let out = credal(&["classify", "--net", &net, "--class", "C", "--evidence", "L=l',S=s'"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("undominated: c', c''"), "{text}");
    assert!(text.contains("cutset:      T (2 assignments)"));
    assert!(text.contains("-> 0.111111") && text.contains("-> 0.725926"));
}

#[test]
fn classify_asia_json_with_tuberculosis_observed() {
    let net = asia_path();
    let out = credal(&[
        "classify",
        "--net",
        &net,
        "--class",
        "C",
        "--evidence",
        "L=l',S=s',T=t'",
        "--output",
        "json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["undominated"], serde_json::json!(["c''"]));
    assert_eq!(report["matrix"][1][0], Value::Bool(true));
}

#[test]
fn bounds_and_naive_attach_to_the_report() {
    let net = asia_path();
    let out = credal(&[
        "classify",
        "--net",
        &net,
        "--class",
        "C",
        "--evidence",
        "L=l',S=s'",
        "--bounds",
        "--naive",
        "--output",
        "json",
    ]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let lower = report["posterior_bounds"][0]["lower"].as_f64().unwrap();
    let upper = report["posterior_bounds"][0]["upper"].as_f64().unwrap();
    let naive = report["naive_posterior"][0]["value"].as_f64().unwrap();
    assert!((lower - 0.1).abs() < 1e-9);
    assert!((upper - 686.0 / 731.0).abs() < 1e-9);
    assert!((naive - 0.646).abs() < 1e-3);
}

#[test]
fn output_is_byte_stable() {
    let net = asia_path();
    let args = [
        "classify",
        "--net",
        &net,
        "--class",
        "C",
        "--evidence",
        "L=l',S=s'",
        "--bounds",
        "--output",
        "json",
    ];
    let first = credal(&args).stdout;
    for _ in 0..3 {
        assert_eq!(credal(&args).stdout, first);
    }
}

#[test]
fn query_file_supplies_class_and_evidence() {
    let query = scratch("query.json", r#"{"class": "C", "evidence": {"L": "l'", "S": "s'", "T": "t'"}}"#);
    let net = asia_path();
    let out = credal(&["classify", "--net", &net, "--query", query.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("undominated: c''\n"));
}

#[test]
fn dominance_for_one_pair() {
    let net = asia_path();
    let out = credal(&[
        "dominance",
        "--net",
        &net,
        "--class",
        "C",
        "--evidence",
        "L=l',S=s'",
        "--pair",
        "c'',c'",
        "--output",
        "json",
    ]);
    let tests: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(tests.as_array().unwrap().len(), 1);
    assert!((tests[0]["value"].as_f64().unwrap() - 45.0 / 686.0).abs() < 1e-12);
    assert_eq!(tests[0]["dominates"], Value::Bool(false));
}

#[test]
fn posterior_and_naive_commands() {
    let net = asia_path();
    let out = credal(&["posterior", "--net", &net, "--class", "C", "--evidence", "L=l',S=s'"]);
    assert!(stdout(&out).contains("c'   [0.100000, 0.938440]"), "{}", stdout(&out));
    let out = credal(&["naive", "--net", &net, "--class", "C", "--evidence", "L=l',S=s'"]);
    assert!(stdout(&out).contains("c'   0.645991"), "{}", stdout(&out));
}

#[test]
fn montyhall_demo() {
    let out = credal(&["demo", "montyhall", "--delta", "2.5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("lower(switch - stick | 2) = 0.000000"), "{text}");
    assert!(text.contains("lower(stick - switch | 2) = -2.500000"));
    assert!(text.contains("verdict: incomparable"));

    let out = credal(&["demo", "montyhall", "--output", "json"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["switch_over_stick"].as_f64(), Some(0.0));
    assert_eq!(report["stick_over_switch"].as_f64(), Some(-1.0));
    assert_eq!(report["extended_switch_over_stick"].as_f64(), Some(-1.0));
}

#[test]
fn asia_demo_runs_both_queries() {
    let out = credal(&["demo", "asia", "--output", "json"]);
    let reports: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(reports[0]["undominated"], serde_json::json!(["c'", "c''"]));
    assert_eq!(reports[1]["undominated"], serde_json::json!(["c''"]));
}

#[test]
fn validate_reports_the_structure() {
    let path = scratch("two.json", TWO_NODE);
    let out = credal(&["validate", "--net", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("valid bayesian network: 2 nodes, 1 arcs, 3 table rows"));
}

#[test]
fn syntax_errors_exit_with_two() {
    let path = scratch("broken.json", "{\"version\": 1,\n  \"kind\": ");
    let out = credal(&["validate", "--net", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"));

    let net = asia_path();
    let out = credal(&["classify", "--net", &net, "--class", "C", "--evidence", "L"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validation_errors_exit_with_three() {
    let path = scratch("unnormalised.json", &TWO_NODE.replace("[0.2, 0.8]", "[0.2, 0.799]"));
    let out = credal(&["validate", "--net", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("tables.B[1]"), "{}", stderr(&out));

    let net = asia_path();
    let out = credal(&["classify", "--net", &net, "--class", "C", "--evidence", "L=nope"]);
    assert_eq!(out.status.code(), Some(3));
    let out = credal(&["classify", "--net", &net, "--class", "C", "--evidence", "C=c'"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cap_exceeded_exits_with_four() {
    let net = asia_path();
    let out = credal(&["posterior", "--net", &net, "--class", "C", "--cap", "3"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn credal_networks_classify_but_have_no_point_posterior() {
    let text = r#"{
      "version": 1, "kind": "credal",
      "nodes": [{"name": "A", "states": ["a0", "a1"]}, {"name": "B", "states": ["b0", "b1"]}],
      "arcs": [["A", "B"]],
      "tables": {
        "A": [{"intervals": {"lower": [0.6, 0.2], "upper": [0.8, 0.4]}}],
        "B": [{"vertices": [[0.9, 0.1], [0.8, 0.2]]}, [0.3, 0.7]]
      }
    }"#;
    let path = scratch("credal.json", text);
    let net = path.to_str().unwrap();
    let out = credal(&["classify", "--net", net, "--class", "A", "--evidence", "B=b0", "--output", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    // min p(a0)/p(a1) = 1.5 and min p(b0|a0)/p(b0|a1) = 0.8/0.3.
    assert_eq!(report["undominated"], serde_json::json!(["a0"]));
    let out = credal(&["posterior", "--net", net, "--class", "A"]);
    assert_eq!(out.status.code(), Some(3));
}
