//! Model Facts labels: a one-page summary of a deployed model's accuracy,
//! evaluation data and demographic coverage, where every cell records
//! whether its value was reported, left unreported, of unknown
//! availability, or never collected.
//!
//! The usual flow is manifest and predictions in, label out:
//!
//! ```
//! use model_facts::{generate_label, parse_label_manifest, parse_predictions, render_text, RenderBudget};
//!
//! let manifest = parse_label_manifest(br#"{
//!     "schema_version": "1.0",
//!     "application": "Flag loan applications for manual review",
//!     "model_type": "balanced_classification",
//!     "model_train_date": "2024-03",
//!     "test_data_range": {"start": "2024-04", "end": "2024-06"},
//!     "positive_class": "review",
//!     "optimized_metric": {"name": "Accuracy", "baseline": "majority-class"},
//!     "warnings": ["Not validated outside the original lender."]
//! }"#).unwrap();
//! let csv = "id,y_true,y_pred,Gender\n1,review,review,Female\n2,ok,ok,Male\n3,ok,review,Female\n4,ok,ok,Male\n";
//! let dataset = parse_predictions(csv.as_bytes(), &manifest).unwrap();
//! let label = generate_label(&dataset, &manifest).unwrap();
//!
//! assert_eq!(label.accuracy.optimized.raw_score.value(), Some(&0.75));
//! let text = render_text(&label, &RenderBudget::default());
//! assert!(text.starts_with("                          MODEL FACTS\n"));
//! ```

pub mod ingest;
pub mod label;
pub mod labelgen;
pub mod metrics;
pub mod render;
pub mod validate;

// Book chapters are compiled as doctests so their snippets stay runnable.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/label.md")]
    mod label {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/manifest.md")]
    mod manifest {}
    #[doc = include_str!("../../../book/src/predictions.md")]
    mod predictions {}
    #[doc = include_str!("../../../book/src/validation.md")]
    mod validation {}
    #[doc = include_str!("../../../book/src/rendering.md")]
    mod rendering {}
    #[doc = include_str!("../../../book/src/compare-audit.md")]
    mod compare_audit {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

use thiserror::Error;

pub use ingest::{
    parse_label_manifest, parse_predictions, IngestError, LabelManifest, PredictionDataset, PredictionRecord,
};
pub use label::{
    CellColor, DateRange, DemographicCategory, DemographicGroupRow, MetricValue, ModelFactsLabel, ModelType,
    PartialDate, Provenance, ProvenanceState, TargetStat,
};
pub use labelgen::{
    build_declared_label, compare_labels, generate_label, parse_reference_population, representation_audit,
    AuditReport, ComparisonReport, LabelError, ReferencePopulation,
};
pub use metrics::{Direction, Metric, MetricsError};
pub use render::{from_canonical_json, render_html, render_text, to_canonical_json, RenderBudget};
pub use validate::{completeness, validate_label, CompletenessReport, Violation, ViolationCode};

/// Any error raised by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Label(#[from] LabelError),
}

impl Error {
    /// Stable machine-readable code, e.g. `SCHEMA_ERROR`.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Ingest(e) => e.code(),
            Error::Metrics(e) => e.code(),
            Error::Label(e) => e.code(),
        }
    }
}
