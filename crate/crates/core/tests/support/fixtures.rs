//! One seeded defect per violation code, applied to a valid base label.

#![allow(dead_code)]

use model_facts::label::{DemographicCategory, DemographicGroupRow, ModelFactsLabel, Provenance, ProvenanceState};
use model_facts::metrics::Metric;
use model_facts::ViolationCode;

pub fn seeded(base: &ModelFactsLabel) -> Vec<(ViolationCode, ModelFactsLabel)> {
    let mut out = Vec::new();

    let mut l = base.clone();
    l.application.application = "Predicts risk. Also ranks people.".into();
    out.push((ViolationCode::ApplicationTooLong, l));

    let mut l = base.clone();
    for i in 0..40 {
        l.demographics.push(DemographicCategory {
            name: format!("Region {i}"),
            note: None,
            rows: vec![DemographicGroupRow::uniform("North", ProvenanceState::NotCollected)],
        });
    }
    out.push((ViolationCode::PageOverflow, l));

    let mut l = base.clone();
    l.accuracy.optimized.name = Metric::LogLoss;
    l.accuracy.optimized.raw_score = Provenance::Reported(0.42);
    l.accuracy.optimized.pct_over_baseline = Provenance::NotCollected;
    out.push((ViolationCode::NonNormalizedMetric, l));

    let mut l = base.clone();
    l.demographics.retain(|c| c.name != "Age");
    out.push((ViolationCode::MissingCanonicalCategory, l));

    let mut l = base.clone();
    l.accuracy.standard.name = Metric::Accuracy;
    out.push((ViolationCode::StandardMetricMismatch, l));

    let mut l = base.clone();
    l.dataset.train_pct = Provenance::Reported(80.0);
    l.dataset.test_pct = Provenance::Reported(30.0);
    out.push((ViolationCode::SplitInconsistent, l));

    let mut l = base.clone();
    l.accuracy.optimized.raw_score = Provenance::Reported(1.3);
    out.push((ViolationCode::ValueOutOfRange, l));

    out
}
