//! Seeded random labels and datasets shared by the property and acceptance suites.

#![allow(dead_code)]

use std::collections::BTreeMap;

use model_facts::ingest::Outcome;
use model_facts::label::{
    AccuracySection, ApplicationInfo, DatasetInfo, DateRange, DemographicCategory, DemographicGroupRow, MetricValue,
    ModelFactsLabel, ModelType, PartialDate, Provenance, TargetStat, CANONICAL_CATEGORIES, SCHEMA_VERSION,
};
use model_facts::metrics::{select_standard_metric, Metric};
use model_facts::{PredictionDataset, PredictionRecord};
use rand::seq::IndexedRandom;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const WORDS: &[&str] = &[
    "model",
    "risk",
    "score",
    "predicts",
    "county",
    "hospital",
    "readmission",
    "within",
    "thirty",
    "days",
    "of",
    "discharge",
    "école",
    "naïve",
    "données",
    "患者",
    "再入院",
    "予測",
    "über",
    "Straße",
    "a",
    "the",
    "for",
    "supercalifragilisticexpialidocious",
    "https://example.org/a/very/long/path/that/never/ends",
    "3.5%",
    "(approx.)",
    "U.S.",
    "e.g.",
    "tab\there",
    "😀",
    "ｗｉｄｅ",
];

pub fn words<R: Rng>(rng: &mut R, min: usize, max: usize) -> String {
    let n = rng.random_range(min..=max);
    (0..n).map(|_| *WORDS.choose(rng).unwrap()).collect::<Vec<_>>().join(" ")
}

/// Application text with no sentence terminators apart from abbreviations.
pub fn application<R: Rng>(rng: &mut R) -> String {
    let text = words(rng, 1, 18);
    let text: String = text.chars().take(200).collect();
    if text.trim().is_empty() {
        "model".to_string()
    } else {
        text
    }
}

/// A float drawn to exercise shortest round-trip printing.
pub fn awkward_f64<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    match rng.random_range(0..4) {
        0 => lo,
        1 => hi,
        2 => (rng.random_range(0..=1000) as f64 / 1000.0) * (hi - lo) + lo,
        _ => rng.random_range(lo..=hi),
    }
}

pub fn cell<R: Rng, T>(rng: &mut R, value: impl FnOnce(&mut R) -> T) -> Provenance<T> {
    match rng.random_range(0..5) {
        0 => Provenance::AvailableUnreported,
        1 => Provenance::UnknownAvailability,
        2 => Provenance::NotCollected,
        _ => Provenance::Reported(value(rng)),
    }
}

fn date<R: Rng>(rng: &mut R) -> PartialDate {
    let y = rng.random_range(1990..=2030);
    match rng.random_range(0..3) {
        0 => PartialDate::year(y),
        1 => PartialDate::year_month(y, rng.random_range(1..=12)).unwrap(),
        _ => PartialDate::ymd(y, rng.random_range(1..=12), rng.random_range(1..=28)).unwrap(),
    }
}

fn date_range<R: Rng>(rng: &mut R) -> DateRange {
    loop {
        let r = DateRange { start: date(rng), end: date(rng) };
        if r.is_ordered() {
            return r;
        }
    }
}

pub fn model_type<R: Rng>(rng: &mut R) -> ModelType {
    *[ModelType::BalancedClassification, ModelType::ImbalancedClassification, ModelType::Regression]
        .choose(rng)
        .unwrap()
}

fn metric_for<R: Rng>(rng: &mut R, mt: ModelType) -> Metric {
    let options: Vec<Metric> = Metric::ALL.iter().copied().filter(|m| m.applies_to(mt)).collect();
    *options.choose(rng).unwrap()
}

fn metric_value<R: Rng>(rng: &mut R, metric: Metric) -> MetricValue {
    let (lo, hi) = metric.range();
    let (lo, hi) = (lo.max(-5.0), hi.min(50.0));
    MetricValue {
        name: metric,
        raw_score: cell(rng, |r| awkward_f64(r, lo, hi)),
        pct_over_baseline: cell(rng, |r| awkward_f64(r, -100.0, 400.0)),
        note: rng.random_bool(0.3).then(|| words(rng, 1, 12)),
    }
}

fn row<R: Rng>(rng: &mut R, group: &str, metric: Metric, classification: bool) -> DemographicGroupRow {
    let (lo, hi) = metric.range();
    let (lo, hi) = (lo.max(-5.0), hi.min(50.0));
    DemographicGroupRow {
        group: group.to_string(),
        pct_in_test: cell(rng, |r| awkward_f64(r, 0.0, 100.0)),
        accuracy: cell(rng, |r| awkward_f64(r, lo, hi)),
        target: cell(rng, |r| {
            if classification {
                TargetStat::PctTarget { pct: awkward_f64(r, 0.0, 100.0) }
            } else {
                TargetStat::MeanStd { mean: awkward_f64(r, -1e6, 1e6), std: awkward_f64(r, 0.0, 1e4) }
            }
        }),
        note: rng.random_bool(0.1).then(|| words(rng, 1, 15)),
    }
}

/// A structurally valid label with random content, cell states and text.
pub fn random_label<R: Rng>(rng: &mut R) -> ModelFactsLabel {
    let mt = model_type(rng);
    let optimized = metric_for(rng, mt);
    let standard = if rng.random_bool(0.8) { select_standard_metric(mt) } else { metric_for(rng, mt) };
    let classification = mt.is_classification();

    let mut demographics: Vec<DemographicCategory> = CANONICAL_CATEGORIES
        .iter()
        .map(|(name, groups)| DemographicCategory {
            name: name.to_string(),
            note: rng.random_bool(0.2).then(|| words(rng, 1, 20)),
            rows: groups.iter().map(|g| row(rng, g, optimized, classification)).collect(),
        })
        .collect();
    for i in 0..rng.random_range(0..3) {
        let n = rng.random_range(1..5);
        demographics.push(DemographicCategory {
            name: format!("{} {i}", words(rng, 1, 3)),
            note: None,
            rows: (0..n)
                .map(|_| {
                    let group = words(rng, 1, 4);
                    row(rng, &group, optimized, classification)
                })
                .collect(),
        });
    }

    let train = awkward_f64(rng, 0.0, 100.0);
    ModelFactsLabel {
        schema_version: SCHEMA_VERSION.to_string(),
        application: ApplicationInfo {
            application: application(rng),
            model_type: mt,
            model_train_date: date(rng),
            test_data_range: date_range(rng),
        },
        accuracy: AccuracySection { optimized: metric_value(rng, optimized), standard: metric_value(rng, standard) },
        dataset: DatasetInfo {
            sample_count: cell(rng, |r| r.random_range(0..=u64::MAX)),
            train_pct: cell(rng, |_| train),
            test_pct: cell(rng, |r| awkward_f64(r, 0.0, 100.0 - train)),
            note: rng.random_bool(0.2).then(|| words(rng, 1, 10)),
        },
        demographics,
        warnings: (0..rng.random_range(0..4)).map(|_| words(rng, 1, 30)).collect(),
    }
}

/// Binary labels over {"pos", "neg"} with the given positive rate.
pub fn binary_labels<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<&'static str> {
    (0..n).map(|_| if rng.random_bool(p) { "pos" } else { "neg" }).collect()
}

/// Scores drawn from a small grid so that ties are common.
pub fn tied_scores<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let levels = rng.random_range(1..=20);
    (0..n)
        .map(|_| {
            if rng.random_bool(0.5) {
                rng.random_range(0..levels) as f64 / levels as f64
            } else {
                rng.random::<f64>()
            }
        })
        .collect()
}

/// A classification dataset whose records fall into up to `max_groups` groups of one category.
pub fn grouped_dataset<R: Rng>(rng: &mut R, max_groups: usize) -> PredictionDataset {
    let n = rng.random_range(1..=200);
    let groups = rng.random_range(1..=max_groups);
    let names = ["Asian", "Hispanic", "Black", "White", "Other", "Pacific"];
    let records = (0..n)
        .map(|i| {
            let truth = if rng.random_bool(0.4) { "yes" } else { "no" };
            let pred = if rng.random_bool(0.7) {
                truth
            } else if truth == "yes" {
                "no"
            } else {
                "yes"
            };
            let mut attributes = BTreeMap::new();
            if rng.random_bool(0.95) {
                attributes.insert("Race".to_string(), names[rng.random_range(0..groups)].to_string());
            }
            PredictionRecord {
                id: format!("r{i:04}"),
                truth: Outcome::Label(truth.to_string()),
                prediction: Some(Outcome::Label(pred.to_string())),
                score: Some(rng.random()),
                attributes,
            }
        })
        .collect();
    PredictionDataset::new(records, ModelType::BalancedClassification, Some("yes".into()), vec!["Race".into()]).unwrap()
}
