//! The Model Facts label data model.
//!
//! A label has four consumer-facing sections (application, accuracy,
//! demographics, warnings) plus a dataset-size block. Every statistic that a
//! developer may or may not be able to publish is wrapped in a [`Provenance`],
//! so a label can state honestly *why* a cell is empty instead of leaving it
//! blank.

use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::metrics::Metric;

/// Label schema versions this crate reads and writes.
pub const SUPPORTED_SCHEMA_VERSIONS: &[&str] = &["1.0"];

/// Schema version stamped on newly built labels.
pub const SCHEMA_VERSION: &str = "1.0";

/// Canonical demographic categories and their rows, in display order.
pub const CANONICAL_CATEGORIES: &[(&str, &[&str])] = &[
    ("Race", &["Asian", "Hispanic", "Black", "White", "Other"]),
    ("Gender", &["Female", "Male", "Trans Female", "Trans Male", "Nonbinary", "Other"]),
    ("Age", &["<17", "18-24", "25-34", "35-49", "50+"]),
];

/// Canonical group names for `category` (case-insensitive), if it is canonical.
pub fn canonical_groups(category: &str) -> Option<&'static [&'static str]> {
    CANONICAL_CATEGORIES.iter().find(|(name, _)| name.eq_ignore_ascii_case(category)).map(|(_, groups)| *groups)
}

/// Canonical spelling of a category name, if it is one of the canonical three.
pub fn canonical_category_name(category: &str) -> Option<&'static str> {
    CANONICAL_CATEGORIES.iter().find(|(name, _)| name.eq_ignore_ascii_case(category)).map(|(name, _)| *name)
}

/// A label cell together with what is known about its availability.
///
/// Only `Reported` carries a value. The other three states record why a value
/// is absent and map onto the green / yellow / red cell colors of a printed
/// label.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "state", content = "value", rename_all = "snake_case", deny_unknown_fields)]
pub enum Provenance<T> {
    Reported(T),
    /// The data exists but the statistic was not published.
    AvailableUnreported,
    /// It is unknown whether the data exists at this granularity.
    UnknownAvailability,
    /// The data was never collected.
    NotCollected,
}

/// The state of a [`Provenance`] without its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProvenanceState {
    Reported,
    AvailableUnreported,
    UnknownAvailability,
    NotCollected,
}

/// Background color used when rendering a cell in a given state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellColor {
    None,
    Green,
    Yellow,
    Red,
}

impl ProvenanceState {
    pub const ALL: [ProvenanceState; 4] = [
        ProvenanceState::Reported,
        ProvenanceState::AvailableUnreported,
        ProvenanceState::UnknownAvailability,
        ProvenanceState::NotCollected,
    ];

    pub fn color(self) -> CellColor {
        match self {
            ProvenanceState::Reported => CellColor::None,
            ProvenanceState::AvailableUnreported => CellColor::Green,
            ProvenanceState::UnknownAvailability => CellColor::Yellow,
            ProvenanceState::NotCollected => CellColor::Red,
        }
    }

    /// Builds an empty cell in this state; `None` for `Reported`, which needs a value.
    pub fn empty<T>(self) -> Option<Provenance<T>> {
        match self {
            ProvenanceState::Reported => None,
            ProvenanceState::AvailableUnreported => Some(Provenance::AvailableUnreported),
            ProvenanceState::UnknownAvailability => Some(Provenance::UnknownAvailability),
            ProvenanceState::NotCollected => Some(Provenance::NotCollected),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ProvenanceState::Reported => "reported",
            ProvenanceState::AvailableUnreported => "available_unreported",
            ProvenanceState::UnknownAvailability => "unknown_availability",
            ProvenanceState::NotCollected => "not_collected",
        }
    }
}

impl<T> Provenance<T> {
    pub fn state(&self) -> ProvenanceState {
        match self {
            Provenance::Reported(_) => ProvenanceState::Reported,
            Provenance::AvailableUnreported => ProvenanceState::AvailableUnreported,
            Provenance::UnknownAvailability => ProvenanceState::UnknownAvailability,
            Provenance::NotCollected => ProvenanceState::NotCollected,
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Provenance::Reported(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_reported(&self) -> bool {
        matches!(self, Provenance::Reported(_))
    }

    pub fn color(&self) -> CellColor {
        self.state().color()
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Provenance<U> {
        match self {
            Provenance::Reported(v) => Provenance::Reported(f(v)),
            Provenance::AvailableUnreported => Provenance::AvailableUnreported,
            Provenance::UnknownAvailability => Provenance::UnknownAvailability,
            Provenance::NotCollected => Provenance::NotCollected,
        }
    }
}

/// Kind of supervised model a label describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelType {
    BalancedClassification,
    ImbalancedClassification,
    Regression,
}

impl ModelType {
    pub fn is_classification(self) -> bool {
        !matches!(self, ModelType::Regression)
    }

    /// Human-readable name used by the renderers.
    pub fn display_name(self) -> &'static str {
        match self {
            ModelType::BalancedClassification => "Balanced Classification",
            ModelType::ImbalancedClassification => "Imbalanced Classification",
            ModelType::Regression => "Regression",
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModelType::BalancedClassification => "balanced_classification",
            ModelType::ImbalancedClassification => "imbalanced_classification",
            ModelType::Regression => "regression",
        }
    }
}

impl FromStr for ModelType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "balanced_classification" => Ok(ModelType::BalancedClassification),
            "imbalanced_classification" => Ok(ModelType::ImbalancedClassification),
            "regression" => Ok(ModelType::Regression),
            other => Err(format!(
                "unknown model type {other:?} (expected balanced_classification, \
                 imbalanced_classification or regression)"
            )),
        }
    }
}

/// A calendar date that may be known only to the year or month.
///
/// Written as `YYYY`, `YYYY-MM` or `YYYY-MM-DD`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartialDate {
    year: i32,
    month: Option<u32>,
    day: Option<u32>,
}

impl PartialDate {
    pub fn year(year: i32) -> Self {
        PartialDate { year, month: None, day: None }
    }

    pub fn year_month(year: i32, month: u32) -> Option<Self> {
        NaiveDate::from_ymd_opt(year, month, 1)?;
        Some(PartialDate { year, month: Some(month), day: None })
    }

    pub fn ymd(year: i32, month: u32, day: u32) -> Option<Self> {
        NaiveDate::from_ymd_opt(year, month, day)?;
        Some(PartialDate { year, month: Some(month), day: Some(day) })
    }

    /// Earliest calendar day covered by this date.
    pub fn first_day(&self) -> NaiveDate {
        NaiveDate::from_ymd_opt(self.year, self.month.unwrap_or(1), self.day.unwrap_or(1))
            .expect("validated at construction")
    }

    /// Latest calendar day covered by this date.
    pub fn last_day(&self) -> NaiveDate {
        match (self.month, self.day) {
            (Some(m), Some(d)) => NaiveDate::from_ymd_opt(self.year, m, d),
            (Some(m), None) => {
                let next = if m == 12 {
                    NaiveDate::from_ymd_opt(self.year + 1, 1, 1)
                } else {
                    NaiveDate::from_ymd_opt(self.year, m + 1, 1)
                };
                next.and_then(|d| d.pred_opt())
            }
            _ => NaiveDate::from_ymd_opt(self.year, 12, 31),
        }
        .expect("validated at construction")
    }
}

impl fmt::Display for PartialDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}", self.year)?;
        if let Some(m) = self.month {
            write!(f, "-{m:02}")?;
        }
        if let Some(d) = self.day {
            write!(f, "-{d:02}")?;
        }
        Ok(())
    }
}

impl FromStr for PartialDate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("{s:?} is not a date of the form YYYY, YYYY-MM or YYYY-MM-DD");
        let parts: Vec<&str> = s.split('-').collect();
        let num = |p: &str, len: usize| -> Result<u32, String> {
            if p.len() != len || !p.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            p.parse().map_err(|_| bad())
        };
        match parts.as_slice() {
            [y] => Ok(PartialDate::year(num(y, 4)? as i32)),
            [y, m] => PartialDate::year_month(num(y, 4)? as i32, num(m, 2)?).ok_or_else(bad),
            [y, m, d] => PartialDate::ymd(num(y, 4)? as i32, num(m, 2)?, num(d, 2)?).ok_or_else(bad),
            _ => Err(bad()),
        }
    }
}

impl Serialize for PartialDate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PartialDate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Inclusive range of (possibly reduced-precision) dates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DateRange {
    pub start: PartialDate,
    pub end: PartialDate,
}

impl DateRange {
    pub fn single(date: PartialDate) -> Self {
        DateRange { start: date, end: date }
    }

    /// True when the range does not run backwards.
    pub fn is_ordered(&self) -> bool {
        self.start.first_day() <= self.end.last_day()
    }
}

impl fmt::Display for DateRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{} to {}", self.start, self.end)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApplicationInfo {
    /// One consumer-facing sentence describing the use case.
    pub application: String,
    pub model_type: ModelType,
    pub model_train_date: PartialDate,
    pub test_data_range: DateRange,
}

/// A named score with its improvement over a baseline model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricValue {
    pub name: Metric,
    pub raw_score: Provenance<f64>,
    /// Percent improvement over the baseline; positive means better.
    pub pct_over_baseline: Provenance<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl MetricValue {
    pub fn new(name: Metric, raw_score: Provenance<f64>, pct_over_baseline: Provenance<f64>) -> Self {
        MetricValue { name, raw_score, pct_over_baseline, note: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AccuracySection {
    /// The score the developers trained and tuned against.
    pub optimized: MetricValue,
    /// The score mandated for the model type.
    pub standard: MetricValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetInfo {
    pub sample_count: Provenance<u64>,
    pub train_pct: Provenance<f64>,
    pub test_pct: Provenance<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Distribution of the target variable within a demographic group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetStat {
    /// Percentage of the group whose truth is the positive class.
    PctTarget { pct: f64 },
    /// Mean and population standard deviation of the group's truth values.
    MeanStd { mean: f64, std: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemographicGroupRow {
    pub group: String,
    pub pct_in_test: Provenance<f64>,
    /// The optimized metric restricted to this group's records.
    pub accuracy: Provenance<f64>,
    pub target: Provenance<TargetStat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl DemographicGroupRow {
    /// A row whose three statistics all share one non-reported state.
    pub fn uniform(group: impl Into<String>, state: ProvenanceState) -> Self {
        DemographicGroupRow {
            group: group.into(),
            pct_in_test: state.empty().unwrap_or(Provenance::NotCollected),
            accuracy: state.empty().unwrap_or(Provenance::NotCollected),
            target: state.empty().unwrap_or(Provenance::NotCollected),
            note: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemographicCategory {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub rows: Vec<DemographicGroupRow>,
}

impl DemographicCategory {
    /// A canonical category with every row in `state`. Returns `None` for
    /// non-canonical names.
    pub fn canonical(name: &str, state: ProvenanceState) -> Option<Self> {
        let canonical = canonical_category_name(name)?;
        let rows = canonical_groups(canonical)?.iter().map(|g| DemographicGroupRow::uniform(*g, state)).collect();
        Some(DemographicCategory { name: canonical.to_string(), note: None, rows })
    }
}

/// A complete Model Facts label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFactsLabel {
    pub schema_version: String,
    pub application: ApplicationInfo,
    pub accuracy: AccuracySection,
    pub dataset: DatasetInfo,
    pub demographics: Vec<DemographicCategory>,
    /// Always present; an empty list means the developer declared no warnings.
    pub warnings: Vec<String>,
}

impl ModelFactsLabel {
    /// Visits every provenance-bearing cell with its field path and state.
    pub fn for_each_cell(&self, mut f: impl FnMut(&str, ProvenanceState)) {
        for (section, metric) in [("optimized", &self.accuracy.optimized), ("standard", &self.accuracy.standard)] {
            f(&format!("accuracy.{section}.raw_score"), metric.raw_score.state());
            f(&format!("accuracy.{section}.pct_over_baseline"), metric.pct_over_baseline.state());
        }
        f("dataset.sample_count", self.dataset.sample_count.state());
        f("dataset.train_pct", self.dataset.train_pct.state());
        f("dataset.test_pct", self.dataset.test_pct.state());
        for (ci, cat) in self.demographics.iter().enumerate() {
            for (ri, row) in cat.rows.iter().enumerate() {
                let base = format!("demographics[{ci}].rows[{ri}]");
                f(&format!("{base}.pct_in_test"), row.pct_in_test.state());
                f(&format!("{base}.accuracy"), row.accuracy.state());
                f(&format!("{base}.target"), row.target.state());
            }
        }
    }

    /// Looks up a category by name, ignoring ASCII case.
    pub fn category(&self, name: &str) -> Option<&DemographicCategory> {
        self.demographics.iter().find(|c| c.name.eq_ignore_ascii_case(name))
    }
}
