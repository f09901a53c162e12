//! Scores computed from raw predictions.
//!
//! Everything here is a pure function of its inputs. Record order never
//! affects a result: datasets are kept sorted by record id, and the
//! rank-based AUC sorts its inputs.

mod auc;
mod baseline;
mod classification;
mod groups;
mod regression;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use auc::auc;
pub use baseline::{majority_class_baseline, percent_over_baseline};
pub use classification::{precision_recall_f1, standard_accuracy, ConfusionCounts, PrecisionRecallF1};
pub use groups::{group_breakdown, GroupStats, Scorer};
pub use regression::{mean_absolute_error, mean_squared_error, r_squared, regression_stats, RegressionStats};

use crate::label::ModelType;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("truth has {truth} entries but predictions have {predicted}")]
    LengthMismatch { truth: usize, predicted: usize },
    #[error("AUC needs at least one positive and one negative record")]
    SingleClass,
    #[error("truth has zero variance; R2 is undefined (mean {mean}, std {std})")]
    ZeroVariance { mean: f64, std: f64 },
    #[error("baseline score is zero; percent over baseline is undefined")]
    ZeroBaseline,
    #[error("score {0} is not a finite number")]
    NonFinite(f64),
    #[error("log loss needs scores in [0, 1], got {0}")]
    ScoreOutOfRange(f64),
    #[error("{metric} cannot be computed for a {model_type} model")]
    Unsupported { metric: Metric, model_type: &'static str },
    #[error("{0} needs a `{1}` value on every record")]
    MissingInput(Metric, &'static str),
    #[error("unknown category {0:?}")]
    UnknownCategory(String),
}

impl MetricsError {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            MetricsError::EmptyDataset => "EMPTY_DATASET",
            MetricsError::LengthMismatch { .. } => "LENGTH_MISMATCH",
            MetricsError::SingleClass => "SINGLE_CLASS",
            MetricsError::ZeroVariance { .. } => "ZERO_VARIANCE",
            MetricsError::ZeroBaseline => "ZERO_BASELINE",
            MetricsError::NonFinite(_) => "NON_FINITE",
            MetricsError::ScoreOutOfRange(_) => "SCORE_OUT_OF_RANGE",
            MetricsError::Unsupported { .. } => "UNSUPPORTED_METRIC",
            MetricsError::MissingInput(..) => "MISSING_INPUT",
            MetricsError::UnknownCategory(_) => "UNKNOWN_CATEGORY",
        }
    }
}

/// Whether larger or smaller raw scores are better.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Maximize,
    Minimize,
}

/// Scores a label can name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Accuracy,
    F1,
    Auc,
    R2,
    /// Binary cross-entropy over `score` probabilities.
    LogLoss,
    Mse,
    Mae,
}

impl Metric {
    pub const ALL: [Metric; 7] =
        [Metric::Accuracy, Metric::F1, Metric::Auc, Metric::R2, Metric::LogLoss, Metric::Mse, Metric::Mae];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Accuracy => "Accuracy",
            Metric::F1 => "F1",
            Metric::Auc => "AUC",
            Metric::R2 => "R2",
            Metric::LogLoss => "LogLoss",
            Metric::Mse => "MSE",
            Metric::Mae => "MAE",
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            Metric::Accuracy | Metric::F1 | Metric::Auc | Metric::R2 => Direction::Maximize,
            Metric::LogLoss | Metric::Mse | Metric::Mae => Direction::Minimize,
        }
    }

    /// Inclusive bounds a valid raw score must respect.
    pub fn range(self) -> (f64, f64) {
        match self {
            Metric::Accuracy | Metric::F1 | Metric::Auc => (0.0, 1.0),
            Metric::R2 => (f64::NEG_INFINITY, 1.0),
            Metric::LogLoss | Metric::Mse | Metric::Mae => (0.0, f64::INFINITY),
        }
    }

    /// True when every valid raw score already lies in [0, 1].
    pub fn is_normalized(self) -> bool {
        matches!(self, Metric::Accuracy | Metric::F1 | Metric::Auc)
    }

    pub fn applies_to(self, model_type: ModelType) -> bool {
        match self {
            Metric::Accuracy | Metric::F1 | Metric::Auc | Metric::LogLoss => model_type.is_classification(),
            Metric::R2 | Metric::Mse | Metric::Mae => !model_type.is_classification(),
        }
    }

    /// Whether computing the metric needs the `score` column.
    pub fn needs_score(self) -> bool {
        matches!(self, Metric::Auc | Metric::LogLoss)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = String;

    /// Case-insensitive; accepts a few common spellings.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String =
            s.chars().filter(|c| !matches!(c, '-' | '_' | ' ' | '²')).collect::<String>().to_ascii_lowercase();
        let squared = s.contains('²');
        Ok(match key.as_str() {
            "accuracy" => Metric::Accuracy,
            "f1" => Metric::F1,
            "auc" | "rocauc" | "aucroc" => Metric::Auc,
            "r2" => Metric::R2,
            "r" if squared => Metric::R2,
            "logloss" | "crossentropy" => Metric::LogLoss,
            "mse" => Metric::Mse,
            "mae" => Metric::Mae,
            _ => return Err(format!("unknown metric {s:?}")),
        })
    }
}

impl Serialize for Metric {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Metric {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The standard score mandated for each model type.
pub fn select_standard_metric(model_type: ModelType) -> Metric {
    match model_type {
        ModelType::BalancedClassification => Metric::Accuracy,
        ModelType::ImbalancedClassification => Metric::F1,
        ModelType::Regression => Metric::R2,
    }
}

pub(crate) fn check_lengths(truth: usize, predicted: usize) -> Result<(), MetricsError> {
    if truth == 0 {
        return Err(MetricsError::EmptyDataset);
    }
    if truth != predicted {
        return Err(MetricsError::LengthMismatch { truth, predicted });
    }
    Ok(())
}
