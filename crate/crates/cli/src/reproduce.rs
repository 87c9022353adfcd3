//! Reproduction runs against the published case-study tables.
//!
//! Upstream tables (distances, similarities) are compared cell by cell and,
//! with a sweep, across every measure strategy. Weights are recomputed from
//! the published similarity tables and asserted. Final results are asserted
//! on rank only.

use std::f64::consts::PI;
use std::fmt::Write as _;

use qbpa::measures::{combined_similarity, NORMALIZED_SUM_TOL};
use qbpa::{
    evidence_weights, run_pipeline, EvidenceSet, Execution, FocalSet, FusionReport, MatrixKind,
    MeasureStrategy, PairwiseMatrix, PipelineError, PipelineOptions,
};
use serde::Serialize;

use crate::fixtures::{PaperFixture, PublishedResult};

/// Tolerance for weights recomputed from the published similarity tables.
pub const WEIGHT_TOL: f64 = 5e-4;

/// Tolerance on the unordered sum of a published (rounded) matrix.
pub const PUBLISHED_SUM_TOL: f64 = 2e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyEntry {
    pub table: String,
    pub row: String,
    pub column: String,
    pub expected: f64,
    pub computed: f64,
    pub abs_diff: f64,
    pub strategy: MeasureStrategy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableDeviation {
    pub table: String,
    pub strategy: MeasureStrategy,
    pub total_abs: f64,
    pub max_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub strategy: MeasureStrategy,
    pub deviations: Vec<TableDeviation>,
    pub top: String,
    pub top_belief: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BestStrategy {
    pub best: TableDeviation,
    /// Number of strategies sharing the best deviation.
    pub ties: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reproduction {
    pub fixture: String,
    pub title: String,
    pub strategy: MeasureStrategy,
    pub copies: usize,
    pub report: FusionReport,
    pub discrepancies: Vec<DiscrepancyEntry>,
    pub summary: Vec<TableDeviation>,
    pub sweep: Option<Vec<SweepRow>>,
    pub best: Option<Vec<BestStrategy>>,
    pub assertions: Vec<Assertion>,
    pub notes: Vec<String>,
}

impl Reproduction {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReproduceOptions {
    pub strategy: MeasureStrategy,
    pub copies: Option<usize>,
    pub sweep: bool,
    pub execution: Execution,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        Self {
            strategy: MeasureStrategy::default(),
            copies: None,
            sweep: false,
            execution: Execution::default(),
        }
    }
}

/// Difference of two angles folded into `[0, π]`.
fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

struct Comparer<'a> {
    fixture: &'a PaperFixture,
    ids: &'a [String],
    sets: Vec<FocalSet>,
}

impl<'a> Comparer<'a> {
    fn new(fixture: &'a PaperFixture, es: &EvidenceSet, ids: &'a [String]) -> Self {
        let sets = fixture
            .published
            .sets
            .iter()
            .map(|s| es.frame().focal_set(*s).expect("fixture sets are in the frame"))
            .collect();
        Self { fixture, ids, sets }
    }

    fn label(&self, table: &str) -> String {
        format!("{} {table}", self.fixture.id)
    }

    fn matrix(
        &self,
        table: &str,
        expected: &[f64],
        computed: Option<&PairwiseMatrix>,
        strategy: MeasureStrategy,
        out: &mut Vec<DiscrepancyEntry>,
    ) {
        let n = self.ids.len();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                let c = computed.map_or(f64::NAN, |m| m.get(i, j));
                out.push(entry(self.label(table), &self.ids[i], &self.ids[j], expected[k], c, strategy));
                k += 1;
            }
        }
    }

    fn result(
        &self,
        name: &str,
        expected: &PublishedResult,
        computed: &qbpa::pipeline::CombinedResult,
        strategy: MeasureStrategy,
        out: &mut Vec<DiscrepancyEntry>,
    ) {
        for (k, set) in self.sets.iter().enumerate() {
            let m = computed.quantum.mass_of(set);
            let row = set.to_string();
            let (amp, phase) = expected.quantum[k];
            out.push(entry(self.label(&format!("{name} amplitude")), &row, "amplitude", amp, m.amplitude, strategy));
            let mut e = entry(self.label(&format!("{name} phase")), &row, "phase", phase, m.phase, strategy);
            e.abs_diff = angle_diff(phase, m.phase);
            out.push(e);
            out.push(entry(
                self.label(&format!("{name} classic")),
                &row,
                "belief",
                expected.classic[k],
                computed.classic.get(set),
                strategy,
            ));
        }
    }

    fn all(&self, report: &FusionReport) -> Vec<DiscrepancyEntry> {
        let p = &self.fixture.published;
        let s = report.strategy;
        let mut out = Vec::new();
        self.matrix("d_XP", p.d_xp, report.d_xp.as_ref(), s, &mut out);
        self.matrix("d_WB", p.d_wb, report.d_wb.as_ref(), s, &mut out);
        self.matrix("Sim1", p.sim1, report.sim1.as_ref(), s, &mut out);
        self.matrix("Sim2", p.sim2, report.sim2.as_ref(), s, &mut out);
        for (i, id) in self.ids.iter().enumerate() {
            out.push(entry(self.label("weights"), id, "weight", p.weights[i], report.weights.as_slice()[i], s));
        }
        self.result("proposed", &p.proposed, &report.proposed, s, &mut out);
        self.result("baseline", &p.baseline, &report.baseline, s, &mut out);
        out
    }
}

fn entry(table: String, row: &str, column: &str, expected: f64, computed: f64, strategy: MeasureStrategy) -> DiscrepancyEntry {
    let abs_diff = (expected - computed).abs();
    DiscrepancyEntry {
        table,
        row: row.to_string(),
        column: column.to_string(),
        expected,
        computed,
        abs_diff: if abs_diff.is_nan() { f64::INFINITY } else { abs_diff },
        strategy,
    }
}

/// Per-table totals, in first-appearance order.
pub fn summarize(entries: &[DiscrepancyEntry]) -> Vec<TableDeviation> {
    let mut out: Vec<TableDeviation> = Vec::new();
    for e in entries {
        match out.iter_mut().find(|t| t.table == e.table) {
            Some(t) => {
                t.total_abs += e.abs_diff;
                t.max_abs = t.max_abs.max(e.abs_diff);
            }
            None => out.push(TableDeviation {
                table: e.table.clone(),
                strategy: e.strategy,
                total_abs: e.abs_diff,
                max_abs: e.abs_diff,
            }),
        }
    }
    out
}

/// Deviations closer than this count as ties.
const TIE_TOL: f64 = 1e-12;

/// For each table, the strategy with the smallest total deviation; ties go
/// to the earliest strategy in sweep order.
pub fn best_per_table(sweep: &[SweepRow]) -> Vec<BestStrategy> {
    let Some(first) = sweep.first() else { return Vec::new() };
    first
        .deviations
        .iter()
        .enumerate()
        .map(|(k, _)| {
            let mut best = sweep[0].deviations[k].clone();
            for row in &sweep[1..] {
                if row.deviations[k].total_abs < best.total_abs - TIE_TOL {
                    best = row.deviations[k].clone();
                }
            }
            let ties = sweep
                .iter()
                .filter(|r| (r.deviations[k].total_abs - best.total_abs).abs() <= TIE_TOL)
                .count();
            BestStrategy { best, ties }
        })
        .collect()
}

/// Weights recomputed from the published Sim1 and Sim2 tables.
pub fn weights_from_published(fixture: &PaperFixture) -> Vec<f64> {
    let p = &fixture.published;
    let n = p.weights.len();
    let s1 = PairwiseMatrix::from_upper(MatrixKind::Similarity, n, p.sim1, true).expect("shape");
    let s2 = PairwiseMatrix::from_upper(MatrixKind::Similarity, n, p.sim2, true).expect("shape");
    let sim = combined_similarity(&s1, &s2).expect("same size");
    evidence_weights(&sim).expect("positive similarities").as_slice().to_vec()
}

fn weight_assertion(fixture: &PaperFixture) -> Assertion {
    let w = weights_from_published(fixture);
    let max = w
        .iter()
        .zip(fixture.published.weights)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let shown: Vec<String> = w.iter().map(|x| format!("{x:.4}")).collect();
    Assertion {
        name: "weights from published similarities".into(),
        passed: max <= WEIGHT_TOL,
        detail: format!("({}) max deviation {max:.6} (tolerance {WEIGHT_TOL})", shown.join(", ")),
    }
}

fn published_sum_assertion(fixture: &PaperFixture) -> Assertion {
    let p = &fixture.published;
    let sums: Vec<(&str, f64)> = [("d_XP", p.d_xp), ("d_WB", p.d_wb), ("Sim1", p.sim1), ("Sim2", p.sim2)]
        .into_iter()
        .map(|(name, m)| (name, m.iter().sum::<f64>()))
        .collect();
    let passed = sums.iter().all(|(_, s)| (s - 1.0).abs() <= PUBLISHED_SUM_TOL);
    let shown: Vec<String> = sums.iter().map(|(n, s)| format!("{n} {s:.4}")).collect();
    Assertion {
        name: "published matrices sum to 1 over i<j".into(),
        passed,
        detail: shown.join(", "),
    }
}

fn computed_sum_assertion(report: &FusionReport) -> Assertion {
    let mut worst = 0.0f64;
    for m in [&report.d_xp, &report.d_wb, &report.sim1, &report.sim2].into_iter().flatten() {
        worst = worst.max((m.unordered_sum() - 1.0).abs());
    }
    Assertion {
        name: "computed matrices sum to 1 over i<j".into(),
        passed: worst <= NORMALIZED_SUM_TOL,
        detail: format!("largest deviation from 1: {worst:.3e}"),
    }
}

fn format_set(labels: &[&str]) -> String {
    format!("{{{}}}", labels.join(","))
}

fn rank_assertions(fixture: &PaperFixture, report: &FusionReport, notes: &mut Vec<String>) -> Vec<Assertion> {
    let mut out = Vec::new();
    let ranking = report.proposed.classic.ranking();
    let base = report.baseline.classic.ranking();
    let (top, top_b) = ranking.first().map(|(s, b)| (s.to_string(), *b)).unwrap_or_default();
    if let Some(expected) = fixture.expect.top {
        let want = format_set(expected);
        out.push(Assertion {
            name: format!("proposed result ranks {want} first"),
            passed: top == want,
            detail: format!("top is {top} ({top_b:.4})"),
        });
    }
    if let Some(bound) = fixture.expect.baseline_max_below {
        let (bs, bb) = base.first().map(|(s, b)| (s.to_string(), *b)).unwrap_or_default();
        out.push(Assertion {
            name: format!("baseline top belief below {bound}"),
            passed: bb < bound,
            detail: format!("baseline top is {bs} ({bb:.4})"),
        });
    }
    if fixture.expect.top.is_none() {
        let show = |r: &[(FocalSet, f64)]| {
            r.iter().map(|(s, b)| format!("{s} {b:.4}")).collect::<Vec<_>>().join(", ")
        };
        notes.push(format!("proposed ranking (not asserted): {}", show(&ranking)));
        notes.push(format!("baseline ranking (not asserted): {}", show(&base)));
    }
    out
}

fn sweep_row(fixture: &PaperFixture, es: &EvidenceSet, strategy: MeasureStrategy, copies: Option<usize>) -> Result<SweepRow, PipelineError> {
    let opts = PipelineOptions {
        strategy,
        copies,
        execution: Execution::Sequential,
    };
    let report = run_pipeline(es, &opts)?;
    let ids = report.evidence_ids.clone();
    let cmp = Comparer::new(fixture, es, &ids);
    let (top, top_belief) = report
        .proposed
        .classic
        .top()
        .map(|(s, b)| (s.to_string(), b))
        .unwrap_or_default();
    Ok(SweepRow {
        strategy,
        deviations: summarize(&cmp.all(&report)),
        top,
        top_belief,
    })
}

pub fn reproduce(fixture: &PaperFixture, opts: &ReproduceOptions) -> Result<Reproduction, PipelineError> {
    let es = fixture.evidence_set();
    let pipeline = PipelineOptions {
        strategy: opts.strategy,
        copies: opts.copies,
        execution: opts.execution,
    };
    let report = run_pipeline(&es, &pipeline)?;
    let ids = report.evidence_ids.clone();
    let discrepancies = Comparer::new(fixture, &es, &ids).all(&report);
    let summary = summarize(&discrepancies);

    let (sweep, best) = if opts.sweep {
        let rows = opts
            .execution
            .try_map(&MeasureStrategy::all(), |s| sweep_row(fixture, &es, *s, opts.copies))?;
        let best = best_per_table(&rows);
        (Some(rows), Some(best))
    } else {
        (None, None)
    };

    let mut notes = report.notes.clone();
    let doc = fixture.evidence_document();
    if let Some(tol) = doc.mass_tolerance {
        notes.push(format!(
            "evidence validated with mass tolerance {tol}; the published input does not sum to 1 within the default"
        ));
    }
    let mut assertions = vec![weight_assertion(fixture), published_sum_assertion(fixture), computed_sum_assertion(&report)];
    assertions.extend(rank_assertions(fixture, &report, &mut notes));

    Ok(Reproduction {
        fixture: fixture.id.to_string(),
        title: fixture.title.to_string(),
        strategy: opts.strategy,
        copies: report.copies,
        report,
        discrepancies,
        summary,
        sweep,
        best,
        assertions,
        notes,
    })
}

fn num(x: f64) -> String {
    format!("{x:.9}")
}

fn strategy_cells(s: &MeasureStrategy) -> String {
    format!("{} | {} | {}", s.distance, s.divergence_input, s.log_base)
}

pub fn render_markdown(r: &Reproduction) -> String {
    let mut out = String::new();
    writeln!(out, "# Reproduction: {} ({})\n", r.fixture, r.title).unwrap();
    writeln!(out, "strategy: {}; copies: {}\n", r.strategy, r.copies).unwrap();
    out.push_str("## assertions\n\n| check | result | detail |\n|---|---|---|\n");
    for a in &r.assertions {
        writeln!(out, "| {} | {} | {} |", a.name, if a.passed { "PASS" } else { "FAIL" }, a.detail).unwrap();
    }
    out.push_str("\n## deviation by table\n\n| table | total abs | max abs |\n|---|---:|---:|\n");
    for t in &r.summary {
        writeln!(out, "| {} | {} | {} |", t.table, num(t.total_abs), num(t.max_abs)).unwrap();
    }
    if let (Some(sweep), Some(best)) = (&r.sweep, &r.best) {
        out.push_str("\n## best strategy per table\n\n| table | distance | divergence input | log base | total abs | max abs | ties |\n|---|---|---|---|---:|---:|---:|\n");
        for b in best {
            writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                b.best.table,
                strategy_cells(&b.best.strategy),
                num(b.best.total_abs),
                num(b.best.max_abs),
                b.ties
            )
            .unwrap();
        }
        out.push_str("\n## sweep\n\n| distance | divergence input | log base | top | top belief |");
        for t in &sweep[0].deviations {
            write!(out, " {} |", t.table).unwrap();
        }
        out.push_str("\n|---|---|---|---|---:|");
        out.push_str(&"---:|".repeat(sweep[0].deviations.len()));
        out.push('\n');
        for row in sweep {
            write!(out, "| {} | {} | {} |", strategy_cells(&row.strategy), row.top, num(row.top_belief)).unwrap();
            for t in &row.deviations {
                write!(out, " {} |", num(t.total_abs)).unwrap();
            }
            out.push('\n');
        }
    }
    out.push_str("\n## discrepancies\n\n| table | row | column | expected | computed | abs diff |\n|---|---|---|---:|---:|---:|\n");
    for d in &r.discrepancies {
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            d.table,
            d.row,
            d.column,
            num(d.expected),
            num(d.computed),
            num(d.abs_diff)
        )
        .unwrap();
    }
    if !r.notes.is_empty() {
        out.push_str("\n## notes\n\n");
        for n in &r.notes {
            writeln!(out, "- {n}").unwrap();
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Tidy CSV: one line per discrepancy cell, sweep cell and assertion.
pub fn render_csv(r: &Reproduction) -> String {
    let mut out = String::from("fixture,kind,table,row,column,distance,divergence_input,log_base,expected,computed,abs_diff\n");
    let mut line = |kind: &str, table: &str, row: &str, col: &str, s: &MeasureStrategy, e: String, c: String, d: String| {
        writeln!(
            out,
            "{},{kind},{},{},{},{},{},{},{e},{c},{d}",
            r.fixture,
            csv_field(table),
            csv_field(row),
            csv_field(col),
            s.distance,
            s.divergence_input,
            s.log_base
        )
        .unwrap();
    };
    for a in &r.assertions {
        line("assertion", &a.name, if a.passed { "pass" } else { "fail" }, &a.detail, &r.strategy, String::new(), String::new(), String::new());
    }
    for d in &r.discrepancies {
        line("cell", &d.table, &d.row, &d.column, &d.strategy, num(d.expected), num(d.computed), num(d.abs_diff));
    }
    if let Some(sweep) = &r.sweep {
        for row in sweep {
            for t in &row.deviations {
                line("sweep", &t.table, "total", "abs", &row.strategy, String::new(), String::new(), num(t.total_abs));
            }
        }
    }
    if let Some(best) = &r.best {
        for b in best {
            line("best", &b.best.table, "total", "abs", &b.best.strategy, String::new(), String::new(), num(b.best.total_abs));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ALL, APP1};

    #[test]
    fn angle_difference_wraps() {
        assert!((angle_diff(3.1, -3.1) - (2.0 * PI - 6.2)).abs() < 1e-12);
        assert!((angle_diff(0.5, 0.2) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn published_weight_chain_holds() {
        for f in ALL {
            assert!(weight_assertion(&f).passed, "{}", f.id);
        }
    }

    #[test]
    fn sweep_covers_every_strategy() {
        let r = reproduce(&APP1, &ReproduceOptions { sweep: true, ..Default::default() }).unwrap();
        let sweep = r.sweep.as_ref().unwrap();
        assert_eq!(sweep.len(), 18);
        let best = r.best.as_ref().unwrap();
        assert_eq!(best.len(), r.summary.len());
        // Sim1 does not depend on the strategy
        let sim1 = best.iter().find(|b| b.best.table == "app1 Sim1").unwrap();
        assert_eq!(sim1.ties, 18);
    }

    #[test]
    fn discrepancy_entries_are_consistent() {
        let r = reproduce(&APP1, &ReproduceOptions::default()).unwrap();
        for d in &r.discrepancies {
            assert!(d.abs_diff >= 0.0);
            if !d.table.ends_with("phase") {
                assert_eq!(d.abs_diff, (d.expected - d.computed).abs());
            }
        }
        assert_eq!(render_markdown(&r), render_markdown(&reproduce(&APP1, &ReproduceOptions::default()).unwrap()));
    }
}
