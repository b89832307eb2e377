//! Plain-text report serialization.
//!
//! One record per report as `key: value` lines in a fixed key order, records
//! separated by a blank line, and a closing summary record. Wall time is
//! left out unless asked for so that reports from different runs compare
//! byte for byte.

use std::fmt::Write;

use crate::scan::{ScanError, ScanOutcome, Summary};
use crate::theorems::{CheckId, Condition, TheoremReport};

#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    pub timings: bool,
}

fn condition_line(out: &mut String, key: &str, c: &Condition) {
    let _ = write!(out, "{key}: {} = {}", c.description, c.status.as_str());
    if let Some(w) = &c.witness {
        let _ = write!(out, " [{w}]");
    }
    out.push('\n');
}

pub fn write_report(out: &mut String, r: &TheoremReport, opts: ReportOptions) {
    let _ = writeln!(out, "group: {}", r.group);
    let _ = writeln!(out, "order: {}", r.order);
    let _ = writeln!(out, "prime: {}", r.prime);
    match r.check {
        CheckId::Theorem(t) => {
            let _ = writeln!(out, "theorem: {}", t.id());
        }
        CheckId::Lemma(l) => {
            let _ = writeln!(out, "lemma: {}", l.id());
        }
    }
    for h in &r.hypotheses {
        condition_line(out, "hypothesis", h);
    }
    condition_line(out, "conclusion", &r.conclusion);
    let _ = writeln!(out, "verdict: {}", r.verdict);
    if opts.timings {
        let _ = writeln!(out, "time_ms: {}", r.elapsed.as_millis());
    }
}

pub fn write_error(out: &mut String, e: &ScanError) {
    let _ = writeln!(out, "group: {}", e.group);
    let _ = writeln!(out, "prime: {}", e.prime);
    if let Some(c) = e.check {
        let _ = writeln!(out, "check: {c}");
    }
    let _ = writeln!(out, "error: {}", e.message);
}

pub fn write_summary(out: &mut String, s: &Summary) {
    let _ = writeln!(
        out,
        "summary: confirmed {}, vacuous {}, VIOLATION {}, undecided {}, errors {}",
        s.confirmed, s.vacuous, s.violations, s.undecided, s.errors
    );
}

/// Full report document for a scan or a set of checks.
pub fn render(outcome: &ScanOutcome, opts: ReportOptions) -> String {
    let mut out = String::new();
    for r in &outcome.reports {
        write_report(&mut out, r, opts);
        out.push('\n');
    }
    for e in &outcome.errors {
        write_error(&mut out, e);
        out.push('\n');
    }
    write_summary(&mut out, &outcome.summary());
    out
}
