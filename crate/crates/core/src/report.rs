//! Text renderings of matrices and fusion reports: Markdown, CSV and JSON.

use std::fmt::Write as _;

use crate::evidence::{ClassicBpa, FocalSet, OrdinalEvidence};
use crate::measures::PairwiseMatrix;
use crate::pipeline::FusionReport;

/// Decimal places used for every number in Markdown and CSV output.
pub const DECIMALS: usize = 9;

fn num(x: f64) -> String {
    format!("{x:.DECIMALS$}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn matrix_markdown(m: &PairwiseMatrix, ids: &[String]) -> String {
    let mut out = String::from("|");
    for id in ids {
        write!(out, " | {id}").unwrap();
    }
    out.push_str(" |\n|---");
    out.push_str(&"|---:".repeat(ids.len()));
    out.push_str("|\n");
    for (id, row) in ids.iter().zip(m.rows()) {
        write!(out, "| {id}").unwrap();
        for v in row {
            write!(out, " | {}", num(*v)).unwrap();
        }
        out.push_str(" |\n");
    }
    out
}

pub fn matrix_csv(m: &PairwiseMatrix, ids: &[String]) -> String {
    let mut out = String::from("evidence");
    for id in ids {
        write!(out, ",{}", csv_field(id)).unwrap();
    }
    out.push('\n');
    for (id, row) in ids.iter().zip(m.rows()) {
        out.push_str(&csv_field(id));
        for v in row {
            write!(out, ",{}", num(*v)).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn report_json(report: &FusionReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

fn named_matrices(r: &FusionReport) -> [(&'static str, &Option<PairwiseMatrix>); 5] {
    [
        ("d_xp", &r.d_xp),
        ("d_wb", &r.d_wb),
        ("sim1", &r.sim1),
        ("sim2", &r.sim2),
        ("sim", &r.sim),
    ]
}

fn quantum_rows(ev: &OrdinalEvidence, sets: &[FocalSet]) -> Vec<(String, f64, f64, f64)> {
    sets.iter()
        .map(|s| {
            let m = ev.mass_of(s);
            (s.to_string(), m.amplitude, m.phase, m.belief())
        })
        .collect()
}

fn quantum_markdown(out: &mut String, ev: &OrdinalEvidence, sets: &[FocalSet]) {
    out.push_str("| set | amplitude | phase | belief |\n|---|---:|---:|---:|\n");
    for (s, a, p, b) in quantum_rows(ev, sets) {
        writeln!(out, "| {s} | {} | {} | {} |", num(a), num(p), num(b)).unwrap();
    }
}

fn classic_markdown(out: &mut String, bpa: &ClassicBpa) {
    out.push_str("| set | belief |\n|---|---:|\n");
    for (s, b) in bpa.ranking() {
        writeln!(out, "| {s} | {} |", num(b)).unwrap();
    }
}

pub fn report_markdown(r: &FusionReport) -> String {
    let mut out = String::from("# Fusion report\n\n");
    writeln!(
        out,
        "strategy: distance={} divergence-input={} log-base={}; copies: {}\n",
        r.strategy.distance, r.strategy.divergence_input, r.strategy.log_base, r.copies
    )
    .unwrap();
    for (name, m) in named_matrices(r) {
        writeln!(out, "## {name}\n").unwrap();
        match m {
            Some(m) => out.push_str(&matrix_markdown(m, &r.evidence_ids)),
            None => out.push_str("(degenerate)\n"),
        }
        out.push('\n');
    }
    out.push_str("## weights\n\n| evidence | weight |\n|---|---:|\n");
    for (id, w) in r.evidence_ids.iter().zip(r.weights.as_slice()) {
        writeln!(out, "| {id} | {} |", num(*w)).unwrap();
    }
    out.push('\n');
    for ev in &r.modified {
        writeln!(out, "## modified {}\n", ev.id()).unwrap();
        quantum_markdown(&mut out, ev, &r.focal_sets);
        out.push('\n');
    }
    out.push_str("## weighted average\n\n");
    quantum_markdown(&mut out, &r.averaged, &r.focal_sets);
    for (name, res) in [("proposed", &r.proposed), ("baseline", &r.baseline)] {
        writeln!(out, "\n## {name} (quantum)\n").unwrap();
        quantum_markdown(&mut out, &res.quantum, &r.focal_sets);
        writeln!(out, "\n## {name} (classic)\n").unwrap();
        classic_markdown(&mut out, &res.classic);
        let ks: Vec<String> = res.conflicts.iter().map(|c| num(c.magnitude)).collect();
        writeln!(out, "\n|K| per step: {}", ks.join(", ")).unwrap();
    }
    if !r.notes.is_empty() {
        out.push_str("\n## notes\n\n");
        for n in &r.notes {
            writeln!(out, "- {n}").unwrap();
        }
    }
    out
}

/// Tidy CSV: one `table,row,column,value` line per number.
pub fn report_csv(r: &FusionReport) -> String {
    let mut out = String::from("table,row,column,value\n");
    let mut line = |table: &str, row: &str, col: &str, v: f64| {
        writeln!(out, "{},{},{},{}", csv_field(table), csv_field(row), csv_field(col), num(v)).unwrap();
    };
    for (name, m) in named_matrices(r) {
        if let Some(m) = m {
            for (i, a) in r.evidence_ids.iter().enumerate() {
                for (j, b) in r.evidence_ids.iter().enumerate() {
                    line(name, a, b, m.get(i, j));
                }
            }
        }
    }
    for (id, w) in r.evidence_ids.iter().zip(r.weights.as_slice()) {
        line("weights", id, "weight", *w);
    }
    let mut quantum = |table: String, ev: &OrdinalEvidence| {
        for (s, a, p, b) in quantum_rows(ev, &r.focal_sets) {
            line(&table, &s, "amplitude", a);
            line(&table, &s, "phase", p);
            line(&table, &s, "belief", b);
        }
    };
    for ev in &r.modified {
        quantum(format!("modified:{}", ev.id()), ev);
    }
    quantum("averaged".into(), &r.averaged);
    quantum("proposed".into(), &r.proposed.quantum);
    quantum("baseline".into(), &r.baseline.quantum);
    for (name, res) in [("proposed", &r.proposed), ("baseline", &r.baseline)] {
        for (s, b) in res.classic.iter() {
            line(&format!("{name}:classic"), &s.to_string(), "belief", b);
        }
        for (k, c) in res.conflicts.iter().enumerate() {
            line(&format!("{name}:conflict"), &(k + 1).to_string(), "magnitude", c.magnitude);
        }
    }
    out
}
