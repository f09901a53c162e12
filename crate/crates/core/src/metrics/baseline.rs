use std::collections::BTreeMap;

use super::{Direction, MetricsError, Scorer};
use crate::ingest::{Outcome, PredictionDataset, PredictionRecord};

/// Percent improvement of `raw` over `baseline`; positive always means better.
///
/// For minimized metrics the difference is flipped so that a lower loss
/// counts as an improvement. The denominator is `|baseline|`, which leaves
/// positive baselines untouched and keeps the sign meaningful for metrics
/// such as R² whose baseline may be negative.
pub fn percent_over_baseline(raw: f64, baseline: f64, direction: Direction) -> Result<f64, MetricsError> {
    if baseline == 0.0 {
        return Err(MetricsError::ZeroBaseline);
    }
    for v in [raw, baseline] {
        if !v.is_finite() {
            return Err(MetricsError::NonFinite(v));
        }
    }
    let gain = match direction {
        Direction::Maximize => raw - baseline,
        Direction::Minimize => baseline - raw,
    };
    Ok(100.0 * gain / baseline.abs())
}

/// Score obtained by predicting the majority class for every record.
///
/// Ties between equally frequent classes go to the lexicographically
/// smallest label. Score-based metrics see a constant score: 1 when the
/// majority class is the positive class, 0 otherwise.
pub fn majority_class_baseline(dataset: &PredictionDataset, scorer: &Scorer) -> Result<f64, MetricsError> {
    if !dataset.model_type().is_classification() {
        return Err(MetricsError::Unsupported { metric: scorer.metric, model_type: dataset.model_type().as_str() });
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for r in dataset.records() {
        *counts.entry(r.truth.as_label()).or_default() += 1;
    }
    let majority = counts
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
        .map(|(label, _)| label.to_string())
        .ok_or(MetricsError::EmptyDataset)?;
    let constant_score = if scorer.positive_class.as_deref() == Some(majority.as_str()) { 1.0 } else { 0.0 };

    let naive: Vec<PredictionRecord> = dataset
        .records()
        .iter()
        .map(|r| PredictionRecord {
            prediction: Some(Outcome::Label(majority.clone())),
            score: Some(constant_score),
            ..r.clone()
        })
        .collect();
    let refs: Vec<&PredictionRecord> = naive.iter().collect();
    scorer.score(&refs)
}
