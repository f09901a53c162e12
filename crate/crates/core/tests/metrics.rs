mod support {
    pub mod arb;
    pub mod oracle;
}

use model_facts::metrics::{
    auc, group_breakdown, percent_over_baseline, precision_recall_f1, regression_stats, select_standard_metric,
    standard_accuracy, Direction, Metric, Scorer,
};
use model_facts::{ModelType, Provenance};
use proptest::prelude::*;
use support::{arb, oracle};

#[test]
fn standard_metric_per_model_type() {
    assert_eq!(select_standard_metric(ModelType::ImbalancedClassification), Metric::F1);
    assert_eq!(select_standard_metric(ModelType::BalancedClassification), Metric::Accuracy);
    assert_eq!(select_standard_metric(ModelType::Regression), Metric::R2);
}

#[test]
fn hand_examples() {
    let t = ["a", "a", "b", "b", "a", "b", "a", "a"];
    let p = ["a", "b", "b", "a", "a", "b", "a", "a"];
    assert_eq!(standard_accuracy(&t, &p).unwrap(), 0.75);

    let prf = precision_recall_f1(&["1", "1", "1", "0"], &["1", "1", "0", "1"], &"1").unwrap();
    for v in [prf.precision, prf.recall, prf.f1] {
        assert!((v - 2.0 / 3.0).abs() < 1e-4);
    }

    assert_eq!(auc(&[0.8, 0.4, 0.6, 0.2], &["p", "p", "n", "n"], &"p").unwrap(), 0.75);

    let s = regression_stats(&[1.0, 2.0, 3.0], &[1.0, 2.0, 2.0]).unwrap();
    assert!((s.r2 - 0.5).abs() < 1e-12);
    assert!((s.target_mean - 2.0).abs() < 1e-12);
    assert!((s.target_std - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
}

#[test]
fn percent_over_baseline_cases() {
    let baseline = oracle::back_solved_baseline(0.939, 10.0);
    assert!((percent_over_baseline(0.939, baseline, Direction::Maximize).unwrap() - 10.0).abs() < 1e-9);
    assert!((percent_over_baseline(0.939, 0.85364, Direction::Maximize).unwrap() - 10.0).abs() <= 0.05);
    assert_eq!(percent_over_baseline(0.5, 0.5, Direction::Maximize).unwrap(), 0.0);
    assert_eq!(percent_over_baseline(0.5, 0.5, Direction::Minimize).unwrap(), 0.0);
    assert!((percent_over_baseline(0.8, 1.0, Direction::Minimize).unwrap() - 20.0).abs() < 1e-12);
    assert_eq!(percent_over_baseline(1.0, 0.0, Direction::Maximize).unwrap_err().code(), "ZERO_BASELINE");
}

#[test]
fn unknown_gender_value_lands_in_other() {
    use model_facts::ingest::Outcome;
    use model_facts::{PredictionDataset, PredictionRecord};
    use std::collections::BTreeMap;
    let rec = |id: &str, g: &str| PredictionRecord {
        id: id.into(),
        truth: Outcome::Label("y".into()),
        prediction: Some(Outcome::Label("y".into())),
        score: None,
        attributes: BTreeMap::from([("Gender".to_string(), g.to_string())]),
    };
    let ds = PredictionDataset::new(
        vec![rec("1", "unknown"), rec("2", "female")],
        ModelType::BalancedClassification,
        Some("y".into()),
        vec!["Gender".into()],
    )
    .unwrap();
    let rows = group_breakdown(&ds, "gender", &Scorer::for_dataset(Metric::Accuracy, &ds)).unwrap();
    let other = rows.iter().find(|r| r.group == "Other").unwrap();
    assert_eq!(other.n, 1);
    let female = rows.iter().find(|r| r.group == "Female").unwrap();
    assert_eq!(female.pct_in_test, Provenance::Reported(50.0));
    let trans = rows.iter().find(|r| r.group == "Trans Male").unwrap();
    assert_eq!(trans.score, Provenance::NotCollected);
}

proptest! {
    #[test]
    fn auc_matches_pair_counting(seed in any::<u64>()) {
        let mut rng = arb::rng(seed);
        let n = 2 + (seed % 150) as usize;
        let mut truth = arb::binary_labels(&mut rng, n, 0.3);
        truth[0] = "pos";
        truth[1] = "neg";
        let scores = arb::tied_scores(&mut rng, n);
        let fast = auc(&scores, &truth, &"pos").unwrap();
        prop_assert!((fast - oracle::auc_pairs(&scores, &truth, "pos")).abs() <= 1e-9);
    }

    #[test]
    fn auc_invariant_under_increasing_transform(seed in any::<u64>()) {
        let mut rng = arb::rng(seed);
        let n = 2 + (seed % 100) as usize;
        let mut truth = arb::binary_labels(&mut rng, n, 0.5);
        truth[0] = "pos";
        truth[1] = "neg";
        let scores = arb::tied_scores(&mut rng, n);
        let transformed: Vec<f64> = scores.iter().map(|s| (3.0 * s).exp() + 7.0).collect();
        prop_assert_eq!(auc(&scores, &truth, &"pos").unwrap(), auc(&transformed, &truth, &"pos").unwrap());
    }

    #[test]
    fn auc_of_negated_scores_is_complement(seed in any::<u64>()) {
        let mut rng = arb::rng(seed);
        let n = 2 + (seed % 100) as usize;
        let mut truth = arb::binary_labels(&mut rng, n, 0.5);
        truth[0] = "pos";
        truth[1] = "neg";
        // distinct scores: a shuffled permutation of 0..n
        let mut scores: Vec<f64> = (0..n).map(|i| i as f64).collect();
        rand::seq::SliceRandom::shuffle(scores.as_mut_slice(), &mut rng);
        let neg: Vec<f64> = scores.iter().map(|s| -s).collect();
        let sum = auc(&scores, &truth, &"pos").unwrap() + auc(&neg, &truth, &"pos").unwrap();
        prop_assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn prf_matches_recount(seed in any::<u64>()) {
        let mut rng = arb::rng(seed);
        let n = 1 + (seed % 200) as usize;
        let truth = arb::binary_labels(&mut rng, n, 0.3);
        let pred = arb::binary_labels(&mut rng, n, 0.4);
        let got = precision_recall_f1(&truth, &pred, &"pos").unwrap();
        let (p, r, f) = oracle::prf(&truth, &pred, "pos");
        prop_assert_eq!((got.precision, got.recall, got.f1), (p, r, f));
    }

    #[test]
    fn percent_over_baseline_sign_follows_improvement(raw in -10.0f64..10.0, base in -10.0f64..10.0) {
        prop_assume!(base != 0.0);
        let up = percent_over_baseline(raw, base, Direction::Maximize).unwrap();
        let down = percent_over_baseline(raw, base, Direction::Minimize).unwrap();
        prop_assert_eq!(up.signum() * (raw != base) as i32 as f64, (raw - base).signum() * (raw != base) as i32 as f64);
        prop_assert_eq!(down.signum() * (raw != base) as i32 as f64, (base - raw).signum() * (raw != base) as i32 as f64);
    }

    #[test]
    fn weighted_group_accuracy_equals_overall(seed in any::<u64>()) {
        let mut rng = arb::rng(seed);
        let ds = arb::grouped_dataset(&mut rng, 6);
        let scorer = Scorer::for_dataset(Metric::Accuracy, &ds);
        let all: Vec<_> = ds.records().iter().collect();
        let overall = scorer.score(&all).unwrap();
        let rows = group_breakdown(&ds, "Race", &scorer).unwrap();
        let weighted: f64 = rows
            .iter()
            .filter_map(|r| r.score.value().map(|s| r.n as f64 / ds.len() as f64 * s))
            .sum();
        prop_assert!((weighted - overall).abs() <= 1e-9);
        let pct: f64 = rows.iter().filter_map(|r| r.pct_in_test.value()).sum();
        prop_assert!((pct - 100.0).abs() <= 1e-6);
    }
}
