//! Reading prediction files and label manifests.

mod demographics;
pub(crate) mod manifest;
mod predictions;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub use demographics::{age_bucket_index, bucket_age, normalize_group, AGE_BUCKETS};
pub use manifest::{
    parse_label_manifest, Baseline, CategoryDecl, DatasetDecl, DemographicsDecl, LabelManifest, MetricDecl, RowDecl,
};
pub use predictions::parse_predictions;

use crate::label::ModelType;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("missing required column `{0}`")]
    MissingColumn(String),
    #[error("row {row}, column `{column}`: {reason}")]
    BadValue { row: usize, column: String, reason: String },
    #[error("no data rows")]
    EmptyFile,
    #[error("row {row}: duplicate id {id:?}")]
    DuplicateId { row: usize, id: String },
    #[error("{path}: {reason}")]
    Schema { path: String, reason: String },
    #[error("{path}: {reason}")]
    UnknownMetric { path: String, reason: String },
    #[error("{path}: {reason}")]
    DateParse { path: String, reason: String },
    #[error("unsupported schema_version {0:?}")]
    UnsupportedVersion(String),
    #[error("age {0} is implausible (must be at most 150)")]
    ImplausibleAge(u32),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl IngestError {
    pub fn code(&self) -> &'static str {
        match self {
            IngestError::MissingColumn(_) => "MISSING_COLUMN",
            IngestError::BadValue { .. } => "BAD_VALUE",
            IngestError::EmptyFile => "EMPTY_FILE",
            IngestError::DuplicateId { .. } => "DUPLICATE_ID",
            IngestError::Schema { .. } => "SCHEMA_ERROR",
            IngestError::UnknownMetric { .. } => "UNKNOWN_METRIC",
            IngestError::DateParse { .. } => "DATE_PARSE_ERROR",
            IngestError::UnsupportedVersion(_) => "UNSUPPORTED_VERSION",
            IngestError::ImplausibleAge(_) => "IMPLAUSIBLE_AGE",
            IngestError::Io(_) => "IO_ERROR",
        }
    }

    pub(crate) fn schema(path: impl Into<String>, reason: impl Into<String>) -> Self {
        IngestError::Schema { path: path.into(), reason: reason.into() }
    }
}

/// A truth or prediction value: a class label or a real number.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Label(String),
    Real(f64),
}

impl Outcome {
    /// The class label; empty for real-valued outcomes.
    pub fn as_label(&self) -> &str {
        match self {
            Outcome::Label(s) => s,
            Outcome::Real(_) => "",
        }
    }

    /// The real value; NaN for class labels.
    pub fn as_real(&self) -> f64 {
        match self {
            Outcome::Real(v) => *v,
            Outcome::Label(_) => f64::NAN,
        }
    }

    fn matches(&self, model_type: ModelType) -> bool {
        matches!(self, Outcome::Label(_)) == model_type.is_classification()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionRecord {
    pub id: String,
    pub truth: Outcome,
    pub prediction: Option<Outcome>,
    pub score: Option<f64>,
    /// Category name to (normalized) group value.
    pub attributes: BTreeMap<String, String>,
}

/// Test-set predictions with demographic attributes.
///
/// Records are held sorted by id so that every downstream computation is
/// independent of input order.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionDataset {
    records: Vec<PredictionRecord>,
    model_type: ModelType,
    positive_class: Option<String>,
    attribute_schema: Vec<String>,
}

impl PredictionDataset {
    pub fn new(
        mut records: Vec<PredictionRecord>,
        model_type: ModelType,
        positive_class: Option<String>,
        attribute_schema: Vec<String>,
    ) -> Result<Self, IngestError> {
        if records.is_empty() {
            return Err(IngestError::EmptyFile);
        }
        if model_type.is_classification() && positive_class.is_none() {
            return Err(IngestError::schema("positive_class", "required for classification models"));
        }
        let mut seen = BTreeSet::new();
        for (i, r) in records.iter().enumerate() {
            let row = i + 1;
            if !seen.insert(r.id.as_str()) {
                return Err(IngestError::DuplicateId { row, id: r.id.clone() });
            }
            let kind = if model_type.is_classification() { "a class label" } else { "a real number" };
            if !r.truth.matches(model_type) {
                return Err(IngestError::BadValue { row, column: "y_true".into(), reason: format!("expected {kind}") });
            }
            if r.prediction.as_ref().is_some_and(|p| !p.matches(model_type)) {
                return Err(IngestError::BadValue { row, column: "y_pred".into(), reason: format!("expected {kind}") });
            }
            if let Some(key) = r.attributes.keys().find(|k| !attribute_schema.contains(k)) {
                return Err(IngestError::schema(
                    format!("records[{i}].attributes"),
                    format!("attribute {key:?} is not in the attribute schema"),
                ));
            }
        }
        records.sort_by(|a, b| a.id.cmp(&b.id));
        Ok(PredictionDataset { records, model_type, positive_class, attribute_schema })
    }

    pub fn records(&self) -> &[PredictionRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn model_type(&self) -> ModelType {
        self.model_type
    }

    pub fn positive_class(&self) -> Option<&str> {
        self.positive_class.as_deref()
    }

    pub fn attribute_schema(&self) -> &[String] {
        &self.attribute_schema
    }

    pub fn has_predictions(&self) -> bool {
        self.records.iter().all(|r| r.prediction.is_some())
    }

    pub fn has_scores(&self) -> bool {
        self.records.iter().all(|r| r.score.is_some())
    }
}
