//! Label assembly, comparison and demographic audits.

mod audit;
mod compare;
mod generate;

use thiserror::Error;

pub use audit::{
    parse_reference_population, representation_audit, AuditGroup, AuditReport, CategoryDisparity, ReferencePopulation,
    DEFAULT_THRESHOLD_PP,
};
pub use compare::{compare_labels, ComparisonEntry, ComparisonReport};
pub use generate::{build_declared_label, generate_label};

use crate::ingest::IngestError;
use crate::metrics::MetricsError;

#[derive(Debug, Error)]
pub enum LabelError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    /// A declared cell disagrees with what the dataset gives.
    #[error("{path}: declared {declared} but the dataset gives {computed}")]
    DeclaredConflict { path: String, declared: String, computed: String },
    #[error("reference population {0:?} shares no demographic category with the label")]
    NoOverlap(String),
    #[error("threshold must be a finite, non-negative number of percentage points (got {0})")]
    InvalidThreshold(f64),
}

impl LabelError {
    pub fn code(&self) -> &'static str {
        match self {
            LabelError::Ingest(e) => e.code(),
            LabelError::Metrics(e) => e.code(),
            LabelError::DeclaredConflict { .. } => "DECLARED_CONFLICT",
            LabelError::NoOverlap(_) => "NO_OVERLAP",
            LabelError::InvalidThreshold(_) => "INVALID_THRESHOLD",
        }
    }
}
