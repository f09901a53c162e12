//! The label manifest: developer-declared metadata and cells.
//!
//! A manifest is a JSON document. Scalar cells may be written either as a
//! bare number (shorthand for a reported value) or as a tagged provenance
//! object such as `{"state": "not_collected"}`. The key reference lives in
//! the book chapter on manifests.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::IngestError;
use crate::label::{
    canonical_category_name, DateRange, ModelType, PartialDate, Provenance, ProvenanceState, TargetStat,
    CANONICAL_CATEGORIES, SUPPORTED_SCHEMA_VERSIONS,
};
use crate::metrics::{Direction, Metric};

/// Where a metric's baseline score comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Baseline {
    Score(f64),
    /// Score of a model that predicts the majority class everywhere.
    MajorityClass,
}

impl Serialize for Baseline {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Baseline::Score(v) => s.serialize_f64(*v),
            Baseline::MajorityClass => s.serialize_str("majority-class"),
        }
    }
}

impl<'de> Deserialize<'de> for Baseline {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Score(f64),
            Policy(String),
        }
        match Raw::deserialize(d)? {
            Raw::Score(v) => Ok(Baseline::Score(v)),
            Raw::Policy(p) if p == "majority-class" => Ok(Baseline::MajorityClass),
            Raw::Policy(p) => Err(serde::de::Error::custom(format!(
                "unknown baseline policy {p:?} (expected a number or \"majority-class\")"
            ))),
        }
    }
}

/// Optional provenance cell accepting a bare value as shorthand for `Reported`.
mod cell {
    use serde::de::{DeserializeOwned, Error};
    use serde_json::Value;

    use super::*;

    pub fn deserialize<'de, D, T>(d: D) -> Result<Option<Provenance<T>>, D::Error>
    where
        D: Deserializer<'de>,
        T: DeserializeOwned,
    {
        let v = Value::deserialize(d)?;
        let cell = if v.is_object() {
            Provenance::<T>::deserialize(v).map_err(D::Error::custom)?
        } else {
            Provenance::Reported(T::deserialize(v).map_err(D::Error::custom)?)
        };
        Ok(Some(cell))
    }
}

fn date_range<'de, D: Deserializer<'de>>(d: D) -> Result<DateRange, D::Error> {
    use serde::de::Error;
    use serde_json::Value;
    match Value::deserialize(d)? {
        Value::String(s) => s.parse::<PartialDate>().map(DateRange::single).map_err(D::Error::custom),
        v @ Value::Object(_) => DateRange::deserialize(v).map_err(D::Error::custom),
        _ => Err(D::Error::custom("expected a date string or an object with start and end")),
    }
}

/// Declared cells for one metric of the accuracy section.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricDecl {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<Metric>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
    #[serde(default, with = "cell_opt", skip_serializing_if = "Option::is_none")]
    pub raw: Option<Provenance<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline: Option<Baseline>,
    #[serde(default, with = "cell_opt", skip_serializing_if = "Option::is_none")]
    pub pct_over_baseline: Option<Provenance<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `with` adapter: shorthand in, tagged out.
mod cell_opt {
    use super::*;

    pub fn deserialize<'de, D, T>(d: D) -> Result<Option<Provenance<T>>, D::Error>
    where
        D: Deserializer<'de>,
        T: serde::de::DeserializeOwned,
    {
        super::cell::deserialize(d)
    }

    pub fn serialize<S, T>(v: &Option<Provenance<T>>, s: S) -> Result<S::Ok, S::Error>
    where
        S: Serializer,
        T: Serialize,
    {
        v.serialize(s)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetDecl {
    #[serde(default, with = "cell_opt", skip_serializing_if = "Option::is_none")]
    pub count: Option<Provenance<u64>>,
    #[serde(default, with = "cell_opt", skip_serializing_if = "Option::is_none")]
    pub train_pct: Option<Provenance<f64>>,
    #[serde(default, with = "cell_opt", skip_serializing_if = "Option::is_none")]
    pub test_pct: Option<Provenance<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Declared statistics for one demographic row.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowDecl {
    pub group: String,
    /// Non-reported state applied to every cell not declared individually.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<ProvenanceState>,
    #[serde(default, with = "cell_opt", skip_serializing_if = "Option::is_none")]
    pub pct_in_test: Option<Provenance<f64>>,
    #[serde(default, with = "cell_opt", skip_serializing_if = "Option::is_none")]
    pub accuracy: Option<Provenance<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Provenance<TargetStat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDecl {
    pub category: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Non-reported state for every canonical row not listed in `rows`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default_state: Option<ProvenanceState>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<RowDecl>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemographicsDecl {
    /// Categories read from the predictions file, in label order after the
    /// canonical three.
    #[serde(default = "default_categories")]
    pub categories: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub declared: Vec<CategoryDecl>,
}

fn default_categories() -> Vec<String> {
    CANONICAL_CATEGORIES.iter().map(|(c, _)| c.to_string()).collect()
}

impl Default for DemographicsDecl {
    fn default() -> Self {
        DemographicsDecl { categories: default_categories(), declared: Vec::new() }
    }
}

/// Developer-supplied metadata and declared label cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelManifest {
    pub schema_version: String,
    pub application: String,
    pub model_type: ModelType,
    pub model_train_date: PartialDate,
    #[serde(deserialize_with = "date_range")]
    pub test_data_range: DateRange,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive_class: Option<String>,
    pub optimized_metric: MetricDecl,
    #[serde(default)]
    pub standard_metric: MetricDecl,
    #[serde(default)]
    pub dataset: DatasetDecl,
    #[serde(default)]
    pub demographics: DemographicsDecl,
    /// Per category, raw value to group name.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aliases: BTreeMap<String, BTreeMap<String, String>>,
    pub warnings: Vec<String>,
}

impl LabelManifest {
    /// The optimized metric; present on every parsed manifest.
    pub fn optimized(&self) -> Metric {
        self.optimized_metric.name.expect("validated manifest names its optimized metric")
    }

    pub fn optimized_direction(&self) -> Direction {
        self.optimized().direction()
    }

    /// Aliases for `category`, matched ignoring case.
    pub fn aliases_for(&self, category: &str) -> BTreeMap<String, String> {
        self.aliases.iter().filter(|(c, _)| c.eq_ignore_ascii_case(category)).flat_map(|(_, m)| m.clone()).collect()
    }

    /// Serializes back to manifest JSON (tagged cells, no shorthand).
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("manifest serializes");
        out.push('\n');
        out
    }
}

/// Parses and validates a manifest document.
pub fn parse_label_manifest(bytes: &[u8]) -> Result<LabelManifest, IngestError> {
    let value: serde_json::Value =
        serde_json::from_slice(bytes).map_err(|e| IngestError::schema("$", e.to_string()))?;
    match value.get("schema_version") {
        Some(serde_json::Value::String(v)) if !SUPPORTED_SCHEMA_VERSIONS.contains(&v.as_str()) => {
            return Err(IngestError::UnsupportedVersion(v.clone()));
        }
        _ => {}
    }
    let mut manifest: LabelManifest = serde_path_to_error::deserialize(value).map_err(classify)?;
    validate(&mut manifest)?;
    Ok(manifest)
}

/// Turns a serde failure into a schema, metric or date error with its path.
pub(crate) fn classify(err: serde_path_to_error::Error<serde_json::Error>) -> IngestError {
    let reason = err.inner().to_string();
    let mut path = err.path().to_string();
    // serde reports a missing field at its parent; name the field itself.
    if let Some(field) = reason.strip_prefix("missing field `").and_then(|r| r.split('`').next()) {
        path = if path == "." { field.to_string() } else { format!("{path}.{field}") };
    }
    let reason = reason.split(" at line ").next().unwrap_or(&reason).to_string();
    if reason.starts_with("unknown metric") {
        IngestError::UnknownMetric { path, reason }
    } else if reason.contains("is not a date of the form") {
        IngestError::DateParse { path, reason }
    } else {
        IngestError::Schema { path, reason }
    }
}

fn check_pct(path: &str, cell: &Option<Provenance<f64>>) -> Result<(), IngestError> {
    if let Some(Provenance::Reported(v)) = cell {
        if !(0.0..=100.0).contains(v) {
            return Err(IngestError::schema(path, format!("percentage {v} out of range [0, 100]")));
        }
    }
    Ok(())
}

fn check_finite(path: &str, cell: &Option<Provenance<f64>>) -> Result<(), IngestError> {
    if let Some(Provenance::Reported(v)) = cell {
        if !v.is_finite() {
            return Err(IngestError::schema(path, "value is not finite"));
        }
    }
    Ok(())
}

fn check_score(path: &str, metric: Metric, cell: &Option<Provenance<f64>>) -> Result<(), IngestError> {
    if let Some(Provenance::Reported(v)) = cell {
        let (lo, hi) = metric.range();
        if !v.is_finite() || *v < lo || *v > hi {
            return Err(IngestError::schema(path, format!("{metric} score {v} out of range")));
        }
    }
    Ok(())
}

fn check_metric(path: &str, decl: &MetricDecl, metric: Metric, model_type: ModelType) -> Result<(), IngestError> {
    if !metric.applies_to(model_type) {
        return Err(IngestError::schema(
            format!("{path}.name"),
            format!("{metric} does not apply to a {} model", model_type.as_str()),
        ));
    }
    if let Some(d) = decl.direction {
        if d != metric.direction() {
            return Err(IngestError::schema(
                format!("{path}.direction"),
                format!("{metric} is always {:?}d", metric.direction()).to_lowercase(),
            ));
        }
    }
    check_score(&format!("{path}.raw"), metric, &decl.raw)?;
    check_finite(&format!("{path}.pct_over_baseline"), &decl.pct_over_baseline)?;
    match decl.baseline {
        Some(Baseline::Score(b)) if !b.is_finite() || b == 0.0 => {
            Err(IngestError::schema(format!("{path}.baseline"), "baseline must be finite and non-zero"))
        }
        Some(Baseline::MajorityClass) if !model_type.is_classification() => Err(IngestError::schema(
            format!("{path}.baseline"),
            "majority-class baseline applies only to classification",
        )),
        _ => Ok(()),
    }
}

fn check_non_reported(path: &str, state: Option<ProvenanceState>) -> Result<(), IngestError> {
    if state == Some(ProvenanceState::Reported) {
        return Err(IngestError::schema(path, "a blanket state cannot be `reported`; declare values per cell"));
    }
    Ok(())
}

fn validate(m: &mut LabelManifest) -> Result<(), IngestError> {
    if m.application.trim().is_empty() {
        return Err(IngestError::schema("application", "must not be empty"));
    }
    if !m.test_data_range.is_ordered() {
        return Err(IngestError::schema("test_data_range", "start is after end"));
    }
    if let Some(pc) = &m.positive_class {
        if pc.trim().is_empty() {
            return Err(IngestError::schema("positive_class", "must not be empty"));
        }
    }

    let optimized =
        m.optimized_metric.name.ok_or_else(|| IngestError::schema("optimized_metric.name", "missing field `name`"))?;
    check_metric("optimized_metric", &m.optimized_metric, optimized, m.model_type)?;
    let standard = m.standard_metric.name.unwrap_or(crate::metrics::select_standard_metric(m.model_type));
    check_metric("standard_metric", &m.standard_metric, standard, m.model_type)?;

    check_pct("dataset.train_pct", &m.dataset.train_pct)?;
    check_pct("dataset.test_pct", &m.dataset.test_pct)?;
    if let (Some(Provenance::Reported(tr)), Some(Provenance::Reported(te))) =
        (&m.dataset.train_pct, &m.dataset.test_pct)
    {
        if tr + te > 100.0 + 1e-9 {
            return Err(IngestError::schema("dataset", format!("train {tr}% + test {te}% exceeds 100%")));
        }
    }

    // canonical spelling for canonical categories; no duplicates
    let mut seen: Vec<String> = Vec::new();
    for (i, c) in m.demographics.categories.iter_mut().enumerate() {
        let path = format!("demographics.categories[{i}]");
        if c.trim().is_empty() {
            return Err(IngestError::schema(path, "category name must not be empty"));
        }
        if let Some(canon) = canonical_category_name(c) {
            *c = canon.to_string();
        }
        if seen.iter().any(|s| s.eq_ignore_ascii_case(c)) {
            return Err(IngestError::schema(path, format!("duplicate category {c:?}")));
        }
        seen.push(c.clone());
    }

    let mut declared_seen: Vec<String> = Vec::new();
    for (ci, cat) in m.demographics.declared.iter_mut().enumerate() {
        let base = format!("demographics.declared[{ci}]");
        if cat.category.trim().is_empty() {
            return Err(IngestError::schema(format!("{base}.category"), "must not be empty"));
        }
        if let Some(canon) = canonical_category_name(&cat.category) {
            cat.category = canon.to_string();
        }
        if declared_seen.iter().any(|s| s.eq_ignore_ascii_case(&cat.category)) {
            return Err(IngestError::schema(format!("{base}.category"), "category declared twice"));
        }
        declared_seen.push(cat.category.clone());
        check_non_reported(&format!("{base}.default_state"), cat.default_state)?;
        let mut groups: Vec<&str> = Vec::new();
        for (ri, row) in cat.rows.iter().enumerate() {
            let rp = format!("{base}.rows[{ri}]");
            if row.group.trim().is_empty() {
                return Err(IngestError::schema(format!("{rp}.group"), "must not be empty"));
            }
            if groups.iter().any(|g| g.eq_ignore_ascii_case(&row.group)) {
                return Err(IngestError::schema(format!("{rp}.group"), "group declared twice"));
            }
            groups.push(&row.group);
            check_non_reported(&format!("{rp}.state"), row.state)?;
            check_pct(&format!("{rp}.pct_in_test"), &row.pct_in_test)?;
            check_score(&format!("{rp}.accuracy"), optimized, &row.accuracy)?;
            if let Some(Provenance::Reported(t)) = &row.target {
                match (t, m.model_type.is_classification()) {
                    (TargetStat::PctTarget { pct }, true) => {
                        check_pct(&format!("{rp}.target"), &Some(Provenance::Reported(*pct)))?
                    }
                    (TargetStat::MeanStd { mean, std }, false) => {
                        if !mean.is_finite() || !std.is_finite() || *std < 0.0 {
                            return Err(IngestError::schema(
                                format!("{rp}.target"),
                                "mean must be finite and std >= 0",
                            ));
                        }
                    }
                    _ => {
                        return Err(IngestError::schema(
                            format!("{rp}.target"),
                            "target kind must be pct_target for classification and mean_std for regression",
                        ))
                    }
                }
            }
        }
    }

    for (category, map) in &m.aliases {
        if let Some(groups) = crate::label::canonical_groups(category) {
            for (alias, target) in map {
                if !groups.iter().any(|g| g.eq_ignore_ascii_case(target)) {
                    return Err(IngestError::schema(
                        format!("aliases.{category}.{alias}"),
                        format!("{target:?} is not a {category} group"),
                    ));
                }
            }
        }
    }

    for (i, w) in m.warnings.iter().enumerate() {
        if w.trim().is_empty() {
            return Err(IngestError::schema(format!("warnings[{i}]"), "warning text must not be empty"));
        }
    }
    Ok(())
}
