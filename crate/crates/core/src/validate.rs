//! Publishability checks and completeness scoring.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::label::{ModelFactsLabel, Provenance, ProvenanceState, TargetStat, CANONICAL_CATEGORIES};
use crate::metrics::select_standard_metric;
use crate::render::{display_width, render_text, RenderBudget};

/// Longest application description accepted, in characters.
pub const MAX_APPLICATION_CHARS: usize = 200;

/// Abbreviations whose periods do not end a sentence. Compared ignoring case.
pub const ABBREVIATIONS: &[&str] = &[
    "u.s.", "u.k.", "e.g.", "i.e.", "etc.", "vs.", "dr.", "mr.", "mrs.", "ms.", "jr.", "sr.", "st.", "no.", "approx.",
    "inc.", "co.", "ltd.", "a.m.", "p.m.",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    ApplicationTooLong,
    PageOverflow,
    NonNormalizedMetric,
    MissingCanonicalCategory,
    StandardMetricMismatch,
    SplitInconsistent,
    ValueOutOfRange,
}

impl ViolationCode {
    pub const ALL: [ViolationCode; 7] = [
        ViolationCode::ApplicationTooLong,
        ViolationCode::PageOverflow,
        ViolationCode::NonNormalizedMetric,
        ViolationCode::MissingCanonicalCategory,
        ViolationCode::StandardMetricMismatch,
        ViolationCode::SplitInconsistent,
        ViolationCode::ValueOutOfRange,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::ApplicationTooLong => "APPLICATION_TOO_LONG",
            ViolationCode::PageOverflow => "PAGE_OVERFLOW",
            ViolationCode::NonNormalizedMetric => "NON_NORMALIZED_METRIC",
            ViolationCode::MissingCanonicalCategory => "MISSING_CANONICAL_CATEGORY",
            ViolationCode::StandardMetricMismatch => "STANDARD_METRIC_MISMATCH",
            ViolationCode::SplitInconsistent => "SPLIT_INCONSISTENT",
            ViolationCode::ValueOutOfRange => "VALUE_OUT_OF_RANGE",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One broken publishability rule.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    /// Field path of the offending value, or `label` for whole-label rules.
    pub location: String,
    pub code: ViolationCode,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.code, self.location, self.message)
    }
}

struct Collector(Vec<Violation>);

impl Collector {
    fn add(&mut self, code: ViolationCode, location: impl Into<String>, message: impl Into<String>) {
        self.0.push(Violation { location: location.into(), code, message: message.into() });
    }
}

/// Counts sentence terminators in `text`.
///
/// A run of `.`, `!` or `?` ends a sentence when it is followed by
/// whitespace or the end of the text (closing quotes and brackets allowed in
/// between) and the word it ends is not a listed abbreviation. Decimal
/// points and dots inside words or URLs therefore never count.
pub fn sentence_terminators(text: &str) -> usize {
    let mut count = 0;
    for word in text.split_whitespace() {
        let core = word.trim_end_matches(['"', '\'', ')', ']', '}', '\u{201d}', '\u{2019}']);
        let core_no_comma = core.trim_end_matches([',', ';', ':']);
        let bare = core_no_comma.trim_start_matches(['"', '\'', '(', '[', '{', '\u{201c}', '\u{2018}']);
        if ABBREVIATIONS.iter().any(|a| a.eq_ignore_ascii_case(bare)) {
            continue;
        }
        if core.ends_with(['.', '!', '?']) {
            count += 1;
        }
    }
    count
}

fn check_application(label: &ModelFactsLabel, out: &mut Collector) {
    let text = &label.application.application;
    let chars = text.chars().count();
    if chars > MAX_APPLICATION_CHARS {
        out.add(
            ViolationCode::ApplicationTooLong,
            "application.application",
            format!("{chars} characters; at most {MAX_APPLICATION_CHARS} allowed"),
        );
    } else if sentence_terminators(text) > 1 {
        out.add(
            ViolationCode::ApplicationTooLong,
            "application.application",
            "more than one sentence; describe the application in a single sentence",
        );
    }
    if text.trim().is_empty() {
        out.add(ViolationCode::ValueOutOfRange, "application.application", "application must not be empty");
    }
    if !label.application.test_data_range.is_ordered() {
        out.add(ViolationCode::ValueOutOfRange, "application.test_data_range", "start is after end");
    }
}

fn check_metrics(label: &ModelFactsLabel, out: &mut Collector) {
    let model_type = label.application.model_type;
    for (section, m) in [("optimized", &label.accuracy.optimized), ("standard", &label.accuracy.standard)] {
        let base = format!("accuracy.{section}");
        if !m.name.applies_to(model_type) {
            out.add(
                ViolationCode::ValueOutOfRange,
                format!("{base}.name"),
                format!("{} does not apply to a {} model", m.name, model_type.as_str()),
            );
        }
        if let Provenance::Reported(raw) = m.raw_score {
            let (lo, hi) = m.name.range();
            let in_range = raw.is_finite() && raw >= lo && raw <= hi;
            if !in_range {
                out.add(
                    ViolationCode::ValueOutOfRange,
                    format!("{base}.raw_score"),
                    format!("{} score {raw} outside [{lo}, {hi}]", m.name),
                );
            }
            let bounded = m.name.is_normalized() && (0.0..=1.0).contains(&raw);
            // an out-of-range score is already reported above
            if in_range && !bounded && !m.pct_over_baseline.is_reported() {
                out.add(
                    ViolationCode::NonNormalizedMetric,
                    format!("{base}.raw_score"),
                    format!("{} score {raw} has no normalized form; report a percentage over baseline", m.name),
                );
            }
        }
        if let Provenance::Reported(pct) = m.pct_over_baseline {
            if !pct.is_finite() {
                out.add(ViolationCode::ValueOutOfRange, format!("{base}.pct_over_baseline"), "value is not finite");
            }
        }
    }
    let mandated = select_standard_metric(model_type);
    if label.accuracy.standard.name != mandated {
        out.add(
            ViolationCode::StandardMetricMismatch,
            "accuracy.standard.name",
            format!(
                "a {} model reports {} as its standard score, not {}",
                model_type.as_str(),
                mandated,
                label.accuracy.standard.name
            ),
        );
    }
}

fn pct_ok(v: f64) -> bool {
    v.is_finite() && (0.0..=100.0).contains(&v)
}

fn check_dataset(label: &ModelFactsLabel, out: &mut Collector) {
    let ds = &label.dataset;
    for (field, cell) in [("train_pct", &ds.train_pct), ("test_pct", &ds.test_pct)] {
        if let Provenance::Reported(v) = cell {
            if !pct_ok(*v) {
                out.add(ViolationCode::ValueOutOfRange, format!("dataset.{field}"), format!("{v} outside [0, 100]"));
            }
        }
    }
    if let (Provenance::Reported(tr), Provenance::Reported(te)) = (&ds.train_pct, &ds.test_pct) {
        if tr + te > 100.0 + 1e-9 {
            out.add(ViolationCode::SplitInconsistent, "dataset", format!("train {tr}% + test {te}% exceeds 100%"));
        }
    }
}

fn check_demographics(label: &ModelFactsLabel, out: &mut Collector) {
    for (name, groups) in CANONICAL_CATEGORIES {
        match label.category(name) {
            None => {
                out.add(ViolationCode::MissingCanonicalCategory, "demographics", format!("category {name} is missing"))
            }
            Some(cat) => {
                let ci = label.demographics.iter().position(|c| std::ptr::eq(c, cat)).unwrap_or(0);
                let missing: Vec<&str> = groups
                    .iter()
                    .copied()
                    .filter(|g| !cat.rows.iter().any(|r| r.group.eq_ignore_ascii_case(g)))
                    .collect();
                if !missing.is_empty() {
                    out.add(
                        ViolationCode::MissingCanonicalCategory,
                        format!("demographics[{ci}]"),
                        format!("{name} is missing rows: {}", missing.join(", ")),
                    );
                }
            }
        }
    }

    let optimized = label.accuracy.optimized.name;
    let classification = label.application.model_type.is_classification();
    for (ci, cat) in label.demographics.iter().enumerate() {
        let mut sum = 0.0;
        let mut all_reported = !cat.rows.is_empty();
        for (ri, row) in cat.rows.iter().enumerate() {
            let base = format!("demographics[{ci}].rows[{ri}]");
            match row.pct_in_test {
                Provenance::Reported(v) => {
                    sum += v;
                    if !pct_ok(v) {
                        out.add(
                            ViolationCode::ValueOutOfRange,
                            format!("{base}.pct_in_test"),
                            format!("{v} outside [0, 100]"),
                        );
                    }
                }
                _ => all_reported = false,
            }
            if let Provenance::Reported(v) = row.accuracy {
                let (lo, hi) = optimized.range();
                if !v.is_finite() || v < lo || v > hi {
                    out.add(
                        ViolationCode::ValueOutOfRange,
                        format!("{base}.accuracy"),
                        format!("{optimized} score {v} outside [{lo}, {hi}]"),
                    );
                }
            }
            if let Provenance::Reported(t) = &row.target {
                let problem = match (t, classification) {
                    (TargetStat::PctTarget { pct }, true) => (!pct_ok(*pct)).then(|| format!("{pct} outside [0, 100]")),
                    (TargetStat::MeanStd { mean, std }, false) => (!mean.is_finite() || !std.is_finite() || *std < 0.0)
                        .then(|| format!("mean {mean} / std {std} invalid")),
                    (TargetStat::PctTarget { .. }, false) => Some("regression rows report mean and std".to_string()),
                    (TargetStat::MeanStd { .. }, true) => {
                        Some("classification rows report a target percentage".to_string())
                    }
                };
                if let Some(msg) = problem {
                    out.add(ViolationCode::ValueOutOfRange, format!("{base}.target"), msg);
                }
            }
        }
        let tolerance = 0.1;
        if (all_reported && (sum - 100.0).abs() > tolerance) || sum > 100.0 + tolerance {
            out.add(
                ViolationCode::SplitInconsistent,
                format!("demographics[{ci}]"),
                format!("{} group shares sum to {sum:.3}%, not 100%", cat.name),
            );
        }
    }
}

fn check_page(label: &ModelFactsLabel, budget: &RenderBudget, out: &mut Collector) {
    let text = render_text(label, budget);
    let lines = text.lines().count();
    if lines > budget.max_lines() {
        out.add(
            ViolationCode::PageOverflow,
            "label",
            format!("text rendering takes {lines} lines; the page holds {}", budget.max_lines()),
        );
    }
    if let Some(widest) = text.lines().map(display_width).max().filter(|w| *w > budget.width()) {
        out.add(
            ViolationCode::PageOverflow,
            "label",
            format!("text rendering is {widest} columns wide; the page holds {}", budget.width()),
        );
    }
}

/// Every rule the label breaks, sorted by location then code.
///
/// Cells recorded as not collected, unreported or unknown are not
/// violations.
pub fn validate_label(label: &ModelFactsLabel, budget: &RenderBudget) -> Vec<Violation> {
    let mut out = Collector(Vec::new());
    check_application(label, &mut out);
    check_metrics(label, &mut out);
    check_dataset(label, &mut out);
    check_demographics(label, &mut out);
    check_page(label, budget, &mut out);
    let mut v = out.0;
    v.sort();
    v
}

/// Share of provenance-bearing cells that carry a reported value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletenessReport {
    pub reported_fraction: f64,
    pub total: usize,
    /// Cell count per state; every state is present, possibly with zero.
    pub tally: BTreeMap<ProvenanceState, usize>,
}

impl CompletenessReport {
    pub fn count(&self, state: ProvenanceState) -> usize {
        self.tally.get(&state).copied().unwrap_or(0)
    }
}

/// Tallies cell states over the accuracy, dataset and demographic sections.
pub fn completeness(label: &ModelFactsLabel) -> CompletenessReport {
    let mut tally: BTreeMap<ProvenanceState, usize> = ProvenanceState::ALL.iter().map(|s| (*s, 0)).collect();
    let mut total = 0;
    label.for_each_cell(|_, state| {
        *tally.entry(state).or_default() += 1;
        total += 1;
    });
    let reported = tally[&ProvenanceState::Reported];
    let reported_fraction = if total == 0 { 0.0 } else { reported as f64 / total as f64 };
    CompletenessReport { reported_fraction, total, tally }
}
