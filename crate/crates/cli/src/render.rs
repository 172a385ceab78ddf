//! Plain-text tables for terminal output.

use std::fmt::Write;

use credal::dominance::{DominanceReport, Interval, PairTest, Point};

use crate::monty::MontyReport;
use crate::Summary;

fn num(x: f64) -> String {
    format!("{x:.6}")
}

fn pad(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> =
            row.iter().enumerate().map(|(c, cell)| format!("{cell:<width$}", width = widths[c])).collect();
        writeln!(out, "  {}", line.join("  ").trim_end()).unwrap();
    }
    out
}

fn test_block(t: &PairTest) -> String {
    let mut out = format!(
        "{} vs {}: {} ({})\n",
        t.dominant,
        t.dominated,
        num(t.value),
        if t.dominates { "dominates" } else { "does not dominate" }
    );
    for term in &t.terms {
        let assignment = if term.assignment.is_empty() {
            "no cutset".to_string()
        } else {
            term.assignment.iter().map(|(n, s)| format!("{n}={s}")).collect::<Vec<_>>().join(" ")
        };
        let factors: Vec<String> =
            term.factors.iter().map(|f| format!("{}={}", f.node, num(f.value))).collect();
        writeln!(out, "    {assignment}: {} -> {}", factors.join(" "), num(term.product)).unwrap();
    }
    out
}

pub fn report(r: &DominanceReport) -> String {
    let mut out = String::new();
    let evidence: Vec<String> = r.evidence.iter().map(|(n, s)| format!("{n}={s}")).collect();
    writeln!(out, "class node:  {}", r.class_node).unwrap();
    writeln!(out, "evidence:    {}", if evidence.is_empty() { "none".into() } else { evidence.join(", ") })
        .unwrap();
    let cutset = if r.cutset.is_empty() { "none".to_string() } else { r.cutset.join(", ") };
    writeln!(out, "cutset:      {cutset} ({} assignments)", r.cutset_assignments).unwrap();
    writeln!(out, "undominated: {}", r.undominated.join(", ")).unwrap();

    out.push_str("\ndominance (row dominates column):\n");
    let mut rows = vec![std::iter::once(String::new()).chain(r.classes.iter().cloned()).collect::<Vec<_>>()];
    for (i, c) in r.classes.iter().enumerate() {
        let mut row = vec![c.clone()];
        row.extend(r.matrix[i].iter().map(|&d| if d { "yes" } else { "." }.to_string()));
        rows.push(row);
    }
    out.push_str(&pad(&rows));

    if !r.relations.is_empty() {
        out.push_str("\nundominated pairs:\n");
        for rel in &r.relations {
            writeln!(out, "  {} / {}: {:?}", rel.first, rel.second, rel.kind).unwrap();
        }
    }

    out.push_str("\ntests:\n");
    for t in &r.tests {
        out.push_str("  ");
        out.push_str(&test_block(t));
    }
    if let Some(b) = &r.posterior_bounds {
        out.push_str("\nposterior bounds:\n");
        out.push_str(&interval_rows(b));
    }
    if let Some(p) = &r.naive_posterior {
        out.push_str("\nnaive posterior:\n");
        out.push_str(&point_rows(p));
    }
    out
}

pub fn tests(ts: &[PairTest]) -> String {
    ts.iter().map(test_block).collect()
}

fn interval_rows(b: &[Interval]) -> String {
    let rows: Vec<Vec<String>> =
        b.iter().map(|i| vec![i.class.clone(), format!("[{}, {}]", num(i.lower), num(i.upper))]).collect();
    pad(&rows)
}

fn point_rows(p: &[Point]) -> String {
    pad(&p.iter().map(|x| vec![x.class.clone(), num(x.value)]).collect::<Vec<_>>())
}

pub fn bounds(b: &[Interval]) -> String {
    interval_rows(b)
}

pub fn points(p: &[Point]) -> String {
    point_rows(p)
}

pub fn summary(s: &Summary) -> String {
    let mut out = format!(
        "valid {} network: {} nodes, {} arcs, {} table rows\n",
        s.kind,
        s.nodes.len(),
        s.arcs,
        s.rows
    );
    let rows: Vec<Vec<String>> = s
        .nodes
        .iter()
        .map(|n| {
            let parents = if n.parents.is_empty() { "-".to_string() } else { n.parents.join(", ") };
            vec![n.name.clone(), format!("{} states", n.states), format!("parents: {parents}")]
        })
        .collect();
    out.push_str(&pad(&rows));
    out
}

pub fn monty(m: &MontyReport) -> String {
    let mut out = format!("prize {}, {}\n", m.delta, m.observation);
    out.push_str("host must open a door:\n");
    writeln!(out, "  lower(switch - stick | 2) = {}", num(m.switch_over_stick)).unwrap();
    writeln!(out, "  lower(stick - switch | 2) = {}", num(m.stick_over_switch)).unwrap();
    writeln!(out, "  verdict: {}", m.verdict).unwrap();
    out.push_str("host may also open no door:\n");
    writeln!(out, "  lower(switch - stick | 2) = {}", num(m.extended_switch_over_stick)).unwrap();
    writeln!(out, "  lower(stick - switch | 2) = {}", num(m.extended_stick_over_switch)).unwrap();
    writeln!(out, "  verdict: {}", m.extended_verdict).unwrap();
    out
}
