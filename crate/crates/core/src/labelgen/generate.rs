//! Building labels from predictions and manifest declarations.

use std::fmt::Debug;

use super::LabelError;
use crate::ingest::{Baseline, CategoryDecl, IngestError, LabelManifest, MetricDecl, PredictionDataset, RowDecl};
use crate::label::{
    canonical_category_name, canonical_groups, AccuracySection, ApplicationInfo, DatasetInfo, DemographicCategory,
    DemographicGroupRow, MetricValue, ModelFactsLabel, Provenance, ProvenanceState, TargetStat, CANONICAL_CATEGORIES,
    SCHEMA_VERSION,
};
use crate::metrics::{
    group_breakdown, majority_class_baseline, percent_over_baseline, select_standard_metric, Metric, Scorer,
};

/// Absolute agreement required between a declared and a computed value,
/// on the 0 to 1 scale (percentages are divided by 100 first).
const AGREEMENT: f64 = 1e-6;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= AGREEMENT
}

fn pct_close(a: f64, b: f64) -> bool {
    close(a / 100.0, b / 100.0)
}

fn target_close(a: &TargetStat, b: &TargetStat) -> bool {
    match (a, b) {
        (TargetStat::PctTarget { pct: a }, TargetStat::PctTarget { pct: b }) => pct_close(*a, *b),
        (TargetStat::MeanStd { mean: m1, std: s1 }, TargetStat::MeanStd { mean: m2, std: s2 }) => {
            close(*m1, *m2) && close(*s1, *s2)
        }
        _ => false,
    }
}

fn describe<T: Debug>(cell: &Provenance<T>) -> String {
    match cell {
        Provenance::Reported(v) => format!("{v:?}"),
        other => other.state().as_str().to_string(),
    }
}

/// Combines a computed cell with a declaration.
///
/// A computed value wins when the declaration agrees with it and is a
/// conflict otherwise; a declaration fills any hole the dataset leaves.
fn merge<T: Debug>(
    path: &str,
    computed: Provenance<T>,
    declared: Option<Provenance<T>>,
    agrees: impl Fn(&T, &T) -> bool,
) -> Result<Provenance<T>, LabelError> {
    match (computed, declared) {
        (Provenance::Reported(c), Some(Provenance::Reported(d))) => {
            if agrees(&c, &d) {
                Ok(Provenance::Reported(c))
            } else {
                Err(conflict(path, &Provenance::Reported(d), &Provenance::Reported(c)))
            }
        }
        (Provenance::Reported(c), Some(d)) => Err(conflict(path, &d, &Provenance::Reported(c))),
        (c, None) => Ok(c),
        (_, Some(d)) => Ok(d),
    }
}

fn conflict<T: Debug>(path: &str, declared: &Provenance<T>, computed: &Provenance<T>) -> LabelError {
    LabelError::DeclaredConflict { path: path.to_string(), declared: describe(declared), computed: describe(computed) }
}

fn missing(path: impl Into<String>, what: &str) -> LabelError {
    IngestError::schema(path, format!("{what} must be declared when no predictions file is given")).into()
}

/// Resolves a metric's raw score and percentage.
///
/// `computed` is the score from the dataset, when there is one. With a
/// dataset, holes fall back to not collected; without one every cell must be
/// declared.
fn metric_value(
    path: &str,
    metric: Metric,
    decl: &MetricDecl,
    computed: Option<f64>,
    dataset: Option<(&PredictionDataset, &Scorer)>,
    required: bool,
) -> Result<MetricValue, LabelError> {
    let hole = Provenance::NotCollected;
    let raw_computed = computed.map(Provenance::Reported).unwrap_or(hole);
    let raw = merge(&format!("{path}.raw_score"), raw_computed, decl.raw, |a, b| close(*a, *b))?;

    let pct_computed = match (&raw, decl.baseline) {
        (Provenance::Reported(r), Some(Baseline::Score(b))) => {
            Provenance::Reported(percent_over_baseline(*r, b, metric.direction())?)
        }
        (Provenance::Reported(r), Some(Baseline::MajorityClass)) => match dataset {
            Some((ds, scorer)) => match majority_class_baseline(ds, scorer)
                .and_then(|b| percent_over_baseline(*r, b, metric.direction()))
            {
                Ok(p) => Provenance::Reported(p),
                Err(e) if required => return Err(e.into()),
                Err(_) => Provenance::NotCollected,
            },
            None => {
                return Err(IngestError::schema(
                    format!("{path}.baseline"),
                    "the majority-class baseline needs a predictions file",
                )
                .into())
            }
        },
        _ => Provenance::NotCollected,
    };
    let pct_declared = decl.pct_over_baseline;
    let pct = merge(&format!("{path}.pct_over_baseline"), pct_computed, pct_declared, |a, b| pct_close(*a, *b))?;

    if dataset.is_none() {
        if decl.raw.is_none() {
            return Err(missing(format!("{path}.raw"), "the raw score"));
        }
        if decl.pct_over_baseline.is_none() && !pct.is_reported() {
            return Err(missing(format!("{path}.pct_over_baseline"), "the percentage over baseline"));
        }
    }
    Ok(MetricValue { name: metric, raw_score: raw, pct_over_baseline: pct, note: decl.note.clone() })
}

fn application(m: &LabelManifest) -> ApplicationInfo {
    ApplicationInfo {
        application: m.application.clone(),
        model_type: m.model_type,
        model_train_date: m.model_train_date,
        test_data_range: m.test_data_range,
    }
}

fn dataset_info(m: &LabelManifest, strict: bool) -> Result<DatasetInfo, LabelError> {
    let d = &m.dataset;
    if strict {
        for (field, present) in
            [("count", d.count.is_some()), ("train_pct", d.train_pct.is_some()), ("test_pct", d.test_pct.is_some())]
        {
            if !present {
                return Err(missing(format!("dataset.{field}"), "the dataset size"));
            }
        }
    }
    Ok(DatasetInfo {
        sample_count: d.count.unwrap_or(Provenance::NotCollected),
        train_pct: d.train_pct.unwrap_or(Provenance::NotCollected),
        test_pct: d.test_pct.unwrap_or(Provenance::NotCollected),
        note: d.note.clone(),
    })
}

/// A row's explicit declaration for one cell: the cell itself, else the row's blanket state.
fn explicit<T: Clone>(cell: &Option<Provenance<T>>, row: &RowDecl) -> Option<Provenance<T>> {
    cell.clone().or_else(|| row.state.and_then(|s| s.empty()))
}

/// Builds a row purely from declarations.
fn declared_row(
    path: &str,
    group: &str,
    row: Option<&RowDecl>,
    default_state: Option<ProvenanceState>,
    strict: bool,
) -> Result<DemographicGroupRow, LabelError> {
    fn fill<T: Clone>(
        path: &str,
        cell: Option<Provenance<T>>,
        default_state: Option<ProvenanceState>,
        strict: bool,
    ) -> Result<Provenance<T>, LabelError> {
        match cell.or_else(|| default_state.and_then(|s| s.empty())) {
            Some(c) => Ok(c),
            None if strict => Err(missing(path, "every demographic cell")),
            None => Ok(Provenance::NotCollected),
        }
    }
    let (pct, acc, target, note) = match row {
        Some(r) => (explicit(&r.pct_in_test, r), explicit(&r.accuracy, r), explicit(&r.target, r), r.note.clone()),
        None => (None, None, None, None),
    };
    Ok(DemographicGroupRow {
        group: group.to_string(),
        pct_in_test: fill(&format!("{path}.pct_in_test"), pct, default_state, strict)?,
        accuracy: fill(&format!("{path}.accuracy"), acc, default_state, strict)?,
        target: fill(&format!("{path}.target"), target, default_state, strict)?,
        note,
    })
}

fn find_row<'a>(decl: Option<&'a CategoryDecl>, group: &str) -> Option<&'a RowDecl> {
    decl.and_then(|d| d.rows.iter().find(|r| r.group.eq_ignore_ascii_case(group)))
}

/// A category built from declarations alone.
fn declared_category(
    name: &str,
    decl: Option<&CategoryDecl>,
    path: &str,
    strict: bool,
) -> Result<DemographicCategory, LabelError> {
    if strict && decl.is_none() && canonical_groups(name).is_some() {
        return Err(missing(path.to_string(), &format!("the {name} category")));
    }
    let default_state = decl.and_then(|d| d.default_state);
    let canonical: Vec<&str> = canonical_groups(name).map(|g| g.to_vec()).unwrap_or_default();
    let mut rows = Vec::new();
    for g in &canonical {
        let rp = format!("{path}.{g}");
        rows.push(declared_row(&rp, g, find_row(decl, g), default_state, strict)?);
    }
    for r in decl.map(|d| d.rows.as_slice()).unwrap_or_default() {
        if !canonical.iter().any(|g| g.eq_ignore_ascii_case(&r.group)) {
            let rp = format!("{path}.{}", r.group);
            rows.push(declared_row(&rp, &r.group, Some(r), default_state, strict)?);
        }
    }
    Ok(DemographicCategory { name: name.to_string(), note: decl.and_then(|d| d.note.clone()), rows })
}

/// A category computed from the dataset, with declarations filling holes.
fn computed_category(
    dataset: &PredictionDataset,
    name: &str,
    decl: Option<&CategoryDecl>,
    scorer: &Scorer,
    path: &str,
) -> Result<DemographicCategory, LabelError> {
    let stats = group_breakdown(dataset, name, scorer)?;
    let default_state = decl.and_then(|d| d.default_state);
    fn fallback<T>(cell: Provenance<T>, default_state: Option<ProvenanceState>) -> Provenance<T> {
        match cell {
            Provenance::Reported(_) => cell,
            hole => default_state.and_then(|s| s.empty()).unwrap_or(hole),
        }
    }
    let mut rows = Vec::new();
    for s in stats {
        let r = find_row(decl, &s.group);
        let rp = format!("{path}.{}", s.group);
        let (pct, acc, target) = match r {
            Some(r) => (explicit(&r.pct_in_test, r), explicit(&r.accuracy, r), explicit(&r.target, r)),
            None => (None, None, None),
        };
        rows.push(DemographicGroupRow {
            pct_in_test: fallback(
                merge(&format!("{rp}.pct_in_test"), s.pct_in_test, pct, |a, b| pct_close(*a, *b))?,
                default_state,
            ),
            accuracy: fallback(merge(&format!("{rp}.accuracy"), s.score, acc, |a, b| close(*a, *b))?, default_state),
            target: fallback(merge(&format!("{rp}.target"), s.target, target, target_close)?, default_state),
            note: r.and_then(|r| r.note.clone()),
            group: s.group,
        });
    }
    for r in decl.map(|d| d.rows.as_slice()).unwrap_or_default() {
        if !rows.iter().any(|row| row.group.eq_ignore_ascii_case(&r.group)) {
            let rp = format!("{path}.{}", r.group);
            rows.push(declared_row(&rp, &r.group, Some(r), default_state, false)?);
        }
    }
    Ok(DemographicCategory { name: name.to_string(), note: decl.and_then(|d| d.note.clone()), rows })
}

/// Category names in label order: the canonical three, then extension
/// categories as listed, then categories that are only declared.
fn category_order(m: &LabelManifest) -> Vec<String> {
    let mut names: Vec<String> = CANONICAL_CATEGORIES.iter().map(|(c, _)| c.to_string()).collect();
    let extra = m.demographics.categories.iter().chain(m.demographics.declared.iter().map(|d| &d.category));
    for c in extra {
        let c = canonical_category_name(c).map(str::to_string).unwrap_or_else(|| c.clone());
        if !names.iter().any(|n| n.eq_ignore_ascii_case(&c)) {
            names.push(c);
        }
    }
    names
}

fn find_decl<'a>(m: &'a LabelManifest, name: &str) -> Option<&'a CategoryDecl> {
    m.demographics.declared.iter().find(|d| d.category.eq_ignore_ascii_case(name))
}

/// Computes a label from predictions, with manifest declarations filling
/// whatever the predictions cannot provide.
///
/// The optimized score and every demographic row come from the dataset;
/// the standard score too when the file has what it needs. Dataset size,
/// split and warnings come from the manifest. A declared cell that
/// contradicts a computed one is a `DECLARED_CONFLICT`.
pub fn generate_label(dataset: &PredictionDataset, manifest: &LabelManifest) -> Result<ModelFactsLabel, LabelError> {
    if dataset.model_type() != manifest.model_type {
        return Err(IngestError::schema(
            "model_type",
            format!(
                "dataset is {} but the manifest says {}",
                dataset.model_type().as_str(),
                manifest.model_type.as_str()
            ),
        )
        .into());
    }
    let optimized_metric = manifest.optimized();
    let opt_scorer = Scorer::for_dataset(optimized_metric, dataset);
    let all: Vec<_> = dataset.records().iter().collect();
    let opt_raw = opt_scorer.score(&all)?;
    let optimized = metric_value(
        "accuracy.optimized",
        optimized_metric,
        &manifest.optimized_metric,
        Some(opt_raw),
        Some((dataset, &opt_scorer)),
        true,
    )?;

    let standard_metric = manifest.standard_metric.name.unwrap_or(select_standard_metric(manifest.model_type));
    let std_scorer = Scorer::for_dataset(standard_metric, dataset);
    let std_raw = std_scorer.score(&all).ok();
    let standard = metric_value(
        "accuracy.standard",
        standard_metric,
        &manifest.standard_metric,
        std_raw,
        Some((dataset, &std_scorer)),
        false,
    )?;

    let mut demographics = Vec::new();
    for (i, name) in category_order(manifest).iter().enumerate() {
        let path = format!("demographics[{i}]");
        let decl = find_decl(manifest, name);
        let present = dataset.attribute_schema().iter().any(|c| c.eq_ignore_ascii_case(name));
        if present {
            demographics.push(computed_category(dataset, name, decl, &opt_scorer, &path)?);
        } else if decl.is_some() || canonical_groups(name).is_some() {
            demographics.push(declared_category(name, decl, &path, false)?);
        }
    }

    Ok(ModelFactsLabel {
        schema_version: SCHEMA_VERSION.to_string(),
        application: application(manifest),
        accuracy: AccuracySection { optimized, standard },
        dataset: dataset_info(manifest, false)?,
        demographics,
        warnings: manifest.warnings.clone(),
    })
}

/// Assembles a label from declarations alone, for models whose predictions
/// are not available.
///
/// Every cell must be declared, either directly or through a blanket
/// state; a missing one is a `SCHEMA_ERROR` naming its path.
pub fn build_declared_label(manifest: &LabelManifest) -> Result<ModelFactsLabel, LabelError> {
    let optimized =
        metric_value("optimized_metric", manifest.optimized(), &manifest.optimized_metric, None, None, true)?;
    let standard_metric = manifest.standard_metric.name.unwrap_or(select_standard_metric(manifest.model_type));
    let standard = metric_value("standard_metric", standard_metric, &manifest.standard_metric, None, None, true)?;

    let mut demographics = Vec::new();
    for name in category_order(manifest) {
        let decl = find_decl(manifest, &name);
        let path = format!("demographics.declared.{name}");
        if decl.is_some() || canonical_groups(&name).is_some() {
            demographics.push(declared_category(&name, decl, &path, true)?);
        }
    }

    Ok(ModelFactsLabel {
        schema_version: SCHEMA_VERSION.to_string(),
        application: application(manifest),
        accuracy: AccuracySection { optimized, standard },
        dataset: dataset_info(manifest, true)?,
        demographics,
        warnings: manifest.warnings.clone(),
    })
}
