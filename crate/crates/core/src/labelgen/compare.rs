//! Side-by-side comparison of several labels.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::label::{MetricValue, ModelFactsLabel};
use crate::metrics::Direction;
use crate::validate::completeness;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonEntry {
    pub id: String,
    pub optimized: MetricValue,
    pub standard: MetricValue,
    pub completeness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    /// One entry per label, sorted by id.
    pub entries: Vec<ComparisonEntry>,
    /// Label ids, best optimized score first.
    pub ranking: Vec<String>,
    pub caveats: Vec<String>,
}

fn normalize_text(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

/// Orders two entries: reported scores before missing ones, better scores
/// first, then ids ascending.
fn rank_order(a: &ComparisonEntry, b: &ComparisonEntry) -> Ordering {
    let key = |e: &ComparisonEntry| {
        e.optimized.raw_score.value().map(|v| match e.optimized.name.direction() {
            Direction::Maximize => *v,
            Direction::Minimize => -*v,
        })
    };
    match (key(a), key(b)) {
        (Some(x), Some(y)) => y.total_cmp(&x),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
    .then_with(|| a.id.cmp(&b.id))
}

/// Compares labels by their optimized scores.
///
/// Caveats are added when the labels describe different applications or
/// datasets, use different optimized metrics, or mix maximized and
/// minimized metrics; scores are only comparable for models tested on the
/// same data.
pub fn compare_labels(labels: &[(String, ModelFactsLabel)]) -> ComparisonReport {
    let mut entries: Vec<ComparisonEntry> = labels
        .iter()
        .map(|(id, label)| ComparisonEntry {
            id: id.clone(),
            optimized: label.accuracy.optimized.clone(),
            standard: label.accuracy.standard.clone(),
            completeness: completeness(label).reported_fraction,
        })
        .collect();

    let mut ranked: Vec<&ComparisonEntry> = entries.iter().collect();
    ranked.sort_by(|a, b| rank_order(a, b));
    let ranking = ranked.iter().map(|e| e.id.clone()).collect();

    let mut caveats = Vec::new();
    let distinct = |f: &dyn Fn(&ModelFactsLabel) -> String| {
        let mut seen: Vec<String> = labels.iter().map(|(_, l)| f(l)).collect();
        seen.sort();
        seen.dedup();
        seen.len() > 1
    };
    if distinct(&|l| normalize_text(&l.application.application)) {
        caveats.push(
            "The labels describe different applications; scores are only comparable for models tested on the same dataset."
                .to_string(),
        );
    }
    if distinct(&|l| format!("{:?} {}", l.dataset.sample_count, l.application.test_data_range)) {
        caveats.push(
            "The labels report different test datasets (sample count or test date range); scores are only comparable for models tested on the same dataset."
                .to_string(),
        );
    }
    if distinct(&|l| l.accuracy.optimized.name.to_string()) {
        caveats.push("The labels optimize different metrics; raw scores are on different scales.".to_string());
    }
    if distinct(&|l| format!("{:?}", l.accuracy.optimized.name.direction())) {
        caveats.push(
            "Some optimized metrics are maximized and others minimized; ranking treats higher-is-better after flipping losses."
                .to_string(),
        );
    }

    entries.sort_by(|a, b| a.id.cmp(&b.id));
    ComparisonReport { entries, ranking, caveats }
}
