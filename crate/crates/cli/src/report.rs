//! Human-readable forms of the validate, compare and audit reports.

use std::fmt::Write;

use model_facts::labelgen::{AuditReport, ComparisonReport};
use model_facts::render::{format_cell, format_pct, format_score};
use model_facts::Violation;

pub fn violations(violations: &[Violation]) -> String {
    if violations.is_empty() {
        return "no violations\n".to_string();
    }
    violations.iter().map(|v| format!("{v}\n")).collect()
}

pub fn comparison(report: &ComparisonReport) -> String {
    let mut out = String::from("Ranking\n");
    for (i, id) in report.ranking.iter().enumerate() {
        let e = report.entries.iter().find(|e| &e.id == id).expect("ranked ids come from entries");
        let _ = writeln!(
            out,
            "{:>3}. {id}: {} {} ({} over baseline); standard {} {}; {} of cells reported",
            i + 1,
            e.optimized.name,
            format_cell(&e.optimized.raw_score, |v| format_score(*v)),
            format_cell(&e.optimized.pct_over_baseline, |v| format_pct(*v)),
            e.standard.name,
            format_cell(&e.standard.raw_score, |v| format_score(*v)),
            format_pct(e.completeness * 100.0),
        );
    }
    out.push_str("Caveats\n");
    if report.caveats.is_empty() {
        out.push_str("  (none)\n");
    }
    for c in &report.caveats {
        let _ = writeln!(out, "  - {c}");
    }
    out
}

pub fn audit(report: &AuditReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Reference population: {}", report.reference);
    let _ = writeln!(out, "Threshold: {} pp", report.threshold_pp);
    let _ = writeln!(out, "Groups");
    for g in &report.groups {
        let gap = match g.gap_pp {
            Some(gap) => format!("{gap:+.1} pp"),
            None => "not auditable".to_string(),
        };
        let _ = writeln!(
            out,
            "  {} / {}: label {}, reference {}, gap {gap}{}",
            g.category,
            g.group,
            format_cell(&g.label_pct, |v| format_pct(*v)),
            format_pct(g.reference_pct),
            if g.flagged { " FLAGGED" } else { "" },
        );
    }
    let _ = writeln!(out, "Accuracy spread");
    for d in &report.disparity {
        let spread = d.accuracy_spread.map(format_score).unwrap_or_else(|| "n/a".to_string());
        let _ = writeln!(out, "  {}: {spread} across {} reported group(s)", d.category, d.groups_reported);
    }
    let _ = writeln!(out, "Flagged: {}", report.flag_count());
    for n in &report.notes {
        let _ = writeln!(out, "Note: {n}");
    }
    out
}
