use std::collections::BTreeMap;

use super::classification::{standard_accuracy, ConfusionCounts};
use super::regression::{mean_absolute_error, mean_squared_error, mean_std, r_squared};
use super::{auc, Metric, MetricsError};
use crate::ingest::{Outcome, PredictionDataset, PredictionRecord};
use crate::label::{canonical_groups, ModelType, Provenance, TargetStat};

/// A metric bound to the information needed to evaluate it on records.
#[derive(Debug, Clone, PartialEq)]
pub struct Scorer {
    pub metric: Metric,
    pub model_type: ModelType,
    /// Positive class label; required for F1, AUC and log loss.
    pub positive_class: Option<String>,
}

impl Scorer {
    pub fn for_dataset(metric: Metric, dataset: &PredictionDataset) -> Self {
        Scorer {
            metric,
            model_type: dataset.model_type(),
            positive_class: dataset.positive_class().map(str::to_string),
        }
    }

    /// Evaluates the metric over `records`.
    pub fn score(&self, records: &[&PredictionRecord]) -> Result<f64, MetricsError> {
        if records.is_empty() {
            return Err(MetricsError::EmptyDataset);
        }
        if !self.metric.applies_to(self.model_type) {
            return Err(MetricsError::Unsupported { metric: self.metric, model_type: self.model_type.as_str() });
        }
        match self.metric {
            Metric::Accuracy => {
                let (truth, pred) = self.label_pairs(records)?;
                standard_accuracy(&truth, &pred)
            }
            Metric::F1 => {
                let (truth, pred) = self.label_pairs(records)?;
                let positive = self.positive()?;
                Ok(ConfusionCounts::from_labels(&truth, &pred, &positive)?.f1())
            }
            Metric::Auc => {
                let positive = self.positive()?;
                let truth: Vec<&str> = records.iter().map(|r| r.truth.as_label()).collect();
                let scores = self.scores(records)?;
                auc(&scores, &truth, &positive)
            }
            Metric::LogLoss => {
                let positive = self.positive()?;
                let scores = self.scores(records)?;
                log_loss(records, &scores, positive)
            }
            Metric::R2 | Metric::Mse | Metric::Mae => {
                let truth: Vec<f64> = records.iter().map(|r| r.truth.as_real()).collect();
                let pred = records
                    .iter()
                    .map(|r| r.prediction.as_ref().map(Outcome::as_real))
                    .collect::<Option<Vec<f64>>>()
                    .ok_or(MetricsError::MissingInput(self.metric, "y_pred"))?;
                match self.metric {
                    Metric::R2 => r_squared(&truth, &pred),
                    Metric::Mse => mean_squared_error(&truth, &pred),
                    _ => mean_absolute_error(&truth, &pred),
                }
            }
        }
    }

    fn positive(&self) -> Result<&str, MetricsError> {
        self.positive_class.as_deref().ok_or(MetricsError::MissingInput(self.metric, "positive_class"))
    }

    fn label_pairs<'a>(&self, records: &[&'a PredictionRecord]) -> Result<(Vec<&'a str>, Vec<&'a str>), MetricsError> {
        let mut truth = Vec::with_capacity(records.len());
        let mut pred = Vec::with_capacity(records.len());
        for r in records {
            let p = r.prediction.as_ref().ok_or(MetricsError::MissingInput(self.metric, "y_pred"))?;
            truth.push(r.truth.as_label());
            pred.push(p.as_label());
        }
        Ok((truth, pred))
    }

    fn scores(&self, records: &[&PredictionRecord]) -> Result<Vec<f64>, MetricsError> {
        records
            .iter()
            .map(|r| r.score)
            .collect::<Option<Vec<f64>>>()
            .ok_or(MetricsError::MissingInput(self.metric, "score"))
    }
}

fn log_loss(records: &[&PredictionRecord], scores: &[f64], positive: &str) -> Result<f64, MetricsError> {
    const EPS: f64 = 1e-15;
    let mut total = 0.0;
    for (r, &s) in records.iter().zip(scores) {
        if !s.is_finite() {
            return Err(MetricsError::NonFinite(s));
        }
        if !(0.0..=1.0).contains(&s) {
            return Err(MetricsError::ScoreOutOfRange(s));
        }
        let p = s.clamp(EPS, 1.0 - EPS);
        total -= if r.truth.as_label() == positive { p.ln() } else { (1.0 - p).ln() };
    }
    Ok(total / records.len() as f64)
}

/// Per-group statistics for one demographic category.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupStats {
    pub group: String,
    pub n: usize,
    /// 100 · n / N; not collected when the group is empty.
    pub pct_in_test: Provenance<f64>,
    /// The scorer restricted to the group; unknown when undefined on it.
    pub score: Provenance<f64>,
    pub target: Provenance<TargetStat>,
}

/// Maps a raw attribute value onto its group within `category`.
///
/// Canonical categories match canonical group names ignoring case and send
/// everything else (including missing values) to `Other`. Other categories
/// keep the trimmed value, with missing values under `Other`.
pub(crate) fn group_of(category: &str, value: Option<&str>) -> String {
    let value = value.map(str::trim).filter(|v| !v.is_empty());
    match (canonical_groups(category), value) {
        (_, None) => "Other".to_string(),
        (Some(groups), Some(v)) => groups.iter().find(|g| g.eq_ignore_ascii_case(v)).unwrap_or(&"Other").to_string(),
        (None, Some(v)) => v.to_string(),
    }
}

/// Partitions the dataset by `category` and computes each group's share,
/// score and target distribution.
///
/// Canonical rows are always emitted, in canonical order; empty canonical
/// groups carry not-collected statistics. Extra groups follow in
/// lexicographic order.
pub fn group_breakdown(
    dataset: &PredictionDataset,
    category: &str,
    scorer: &Scorer,
) -> Result<Vec<GroupStats>, MetricsError> {
    let category = dataset
        .attribute_schema()
        .iter()
        .find(|c| c.eq_ignore_ascii_case(category))
        .ok_or_else(|| MetricsError::UnknownCategory(category.to_string()))?;
    let total = dataset.len();
    if total == 0 {
        return Err(MetricsError::EmptyDataset);
    }

    let mut members: BTreeMap<String, Vec<&PredictionRecord>> = BTreeMap::new();
    for record in dataset.records() {
        let group = group_of(category, record.attributes.get(category).map(String::as_str));
        members.entry(group).or_default().push(record);
    }

    let mut order: Vec<String> =
        canonical_groups(category).map(|gs| gs.iter().map(|g| g.to_string()).collect()).unwrap_or_default();
    let extras: Vec<String> = members.keys().filter(|k| !order.contains(k)).cloned().collect();
    order.extend(extras);

    let out = order
        .into_iter()
        .map(|group| match members.get(&group) {
            None => GroupStats {
                group,
                n: 0,
                pct_in_test: Provenance::NotCollected,
                score: Provenance::NotCollected,
                target: Provenance::NotCollected,
            },
            Some(records) => GroupStats {
                n: records.len(),
                pct_in_test: Provenance::Reported(100.0 * records.len() as f64 / total as f64),
                score: match scorer.score(records) {
                    Ok(s) => Provenance::Reported(s),
                    Err(_) => Provenance::UnknownAvailability,
                },
                target: target_stat(records, scorer),
                group,
            },
        })
        .collect();
    Ok(out)
}

fn target_stat(records: &[&PredictionRecord], scorer: &Scorer) -> Provenance<TargetStat> {
    if scorer.model_type.is_classification() {
        match &scorer.positive_class {
            Some(positive) => {
                let hits = records.iter().filter(|r| r.truth.as_label() == positive).count();
                Provenance::Reported(TargetStat::PctTarget { pct: 100.0 * hits as f64 / records.len() as f64 })
            }
            None => Provenance::UnknownAvailability,
        }
    } else {
        let truth: Vec<f64> = records.iter().map(|r| r.truth.as_real()).collect();
        let (mean, std) = mean_std(&truth);
        Provenance::Reported(TargetStat::MeanStd { mean, std })
    }
}
