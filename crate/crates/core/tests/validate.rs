mod support {
    pub mod fixtures;
}

use std::path::PathBuf;

use model_facts::label::{DemographicCategory, DemographicGroupRow, ProvenanceState};
use model_facts::{
    build_declared_label, parse_label_manifest, render_text, validate_label, ModelFactsLabel, Provenance, RenderBudget,
    TargetStat, ViolationCode,
};

fn golden(name: &str) -> ModelFactsLabel {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{name}.manifest.json"));
    build_declared_label(&parse_label_manifest(&std::fs::read(path).unwrap()).unwrap()).unwrap()
}

fn codes(label: &ModelFactsLabel) -> Vec<ViolationCode> {
    validate_label(label, &RenderBudget::default()).into_iter().map(|v| v.code).collect()
}

#[test]
fn every_seeded_defect_is_reported_alone() {
    for base in [golden("void"), golden("suicide_risk")] {
        let seeded = support::fixtures::seeded(&base);
        let covered: Vec<ViolationCode> = seeded.iter().map(|(c, _)| *c).collect();
        assert_eq!(covered, ViolationCode::ALL);
        for (code, label) in seeded {
            let found = codes(&label);
            assert!(!found.is_empty() && found.iter().all(|c| *c == code), "{code}: {found:?}");
        }
    }
}

#[test]
fn goldens_have_no_violations() {
    assert_eq!(codes(&golden("void")), vec![]);
    assert_eq!(codes(&golden("suicide_risk")), vec![]);
}

#[test]
fn forty_categories_overflow_the_page() {
    let mut label = golden("void");
    for i in 0..40 {
        label.demographics.push(DemographicCategory {
            name: format!("Site {i}"),
            note: None,
            rows: vec![DemographicGroupRow::uniform("A", ProvenanceState::NotCollected)],
        });
    }
    let lines = render_text(&label, &RenderBudget::default()).lines().count();
    assert!(lines > 80, "{lines}");
    let v = validate_label(&label, &RenderBudget::default());
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].code, ViolationCode::PageOverflow);
    assert_eq!(v[0].location, "label");
}

#[test]
fn sentence_rule() {
    let mut label = golden("void");
    for ok in [
        "Predicts readmission risk in U.S. hospitals.",
        "Scores 3.5 million records, e.g. claims",
        "Ranks applicants for review",
    ] {
        label.application.application = ok.into();
        assert_eq!(codes(&label), vec![], "{ok}");
    }
    label.application.application = "a".repeat(201);
    assert_eq!(codes(&label), vec![ViolationCode::ApplicationTooLong]);
}

#[test]
fn honest_gaps_are_not_violations() {
    let mut label = golden("suicide_risk");
    label.accuracy.standard.raw_score = Provenance::UnknownAvailability;
    label.dataset.sample_count = Provenance::NotCollected;
    assert_eq!(codes(&label), vec![]);
}

#[test]
fn range_checks() {
    let mut label = golden("void");
    label.demographics[0].rows[0].pct_in_test = Provenance::Reported(120.0);
    assert!(codes(&label).contains(&ViolationCode::ValueOutOfRange));

    let mut label = golden("void");
    label.demographics[0].rows[0].target = Provenance::Reported(TargetStat::MeanStd { mean: 1.0, std: 0.5 });
    assert_eq!(codes(&label), vec![ViolationCode::ValueOutOfRange]);

    let mut label = golden("void");
    label.application.test_data_range.start = "2020".parse().unwrap();
    assert_eq!(codes(&label), vec![ViolationCode::ValueOutOfRange]);
}

#[test]
fn group_shares_must_add_up() {
    let mut label = golden("void");
    for (i, row) in label.demographics[0].rows.iter_mut().enumerate() {
        row.pct_in_test = Provenance::Reported(if i == 0 { 40.0 } else { 10.0 });
    }
    assert_eq!(codes(&label), vec![ViolationCode::SplitInconsistent]);
    label.demographics[0].rows[0].pct_in_test = Provenance::Reported(60.0);
    assert_eq!(codes(&label), vec![]);
}

#[test]
fn violations_sorted_by_location() {
    let mut label = golden("void");
    label.accuracy.standard.name = model_facts::Metric::Accuracy;
    label.application.application = "One. Two.".into();
    label.dataset.test_pct = Provenance::Reported(101.0);
    let v = validate_label(&label, &RenderBudget::default());
    let locations: Vec<&str> = v.iter().map(|v| v.location.as_str()).collect();
    assert_eq!(locations, ["accuracy.standard.name", "application.application", "dataset.test_pct"]);
}
