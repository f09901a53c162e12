//! Comparing a label's demographic shares against a reference population.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::LabelError;
use crate::ingest::IngestError;
use crate::label::{ModelFactsLabel, Provenance};

pub const DEFAULT_THRESHOLD_PP: f64 = 5.0;

/// Tolerance on each category's total share.
const SUM_TOLERANCE: f64 = 0.1;

/// Expected group shares, in percent, for some population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferencePopulation {
    pub name: String,
    /// Category, then group, to percentage.
    pub categories: BTreeMap<String, BTreeMap<String, f64>>,
}

impl ReferencePopulation {
    /// Checks shares are in range and each category sums to 100 ± 0.1.
    pub fn validate(&self) -> Result<(), IngestError> {
        if self.categories.is_empty() {
            return Err(IngestError::schema("categories", "at least one category is required"));
        }
        for (cat, groups) in &self.categories {
            if groups.is_empty() {
                return Err(IngestError::schema(format!("categories.{cat}"), "category has no groups"));
            }
            for (g, pct) in groups {
                if !pct.is_finite() || !(0.0..=100.0).contains(pct) {
                    return Err(IngestError::schema(
                        format!("categories.{cat}.{g}"),
                        format!("{pct} outside [0, 100]"),
                    ));
                }
            }
            let sum: f64 = groups.values().sum();
            if (sum - 100.0).abs() > SUM_TOLERANCE {
                return Err(IngestError::schema(format!("categories.{cat}"), format!("shares sum to {sum}, not 100")));
            }
        }
        Ok(())
    }
}

/// Parses and validates a reference population document.
pub fn parse_reference_population(bytes: &[u8]) -> Result<ReferencePopulation, IngestError> {
    let value: serde_json::Value =
        serde_json::from_slice(bytes).map_err(|e| IngestError::schema("$", e.to_string()))?;
    let reference: ReferencePopulation =
        serde_path_to_error::deserialize(value).map_err(crate::ingest::manifest::classify)?;
    reference.validate()?;
    Ok(reference)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditGroup {
    pub category: String,
    pub group: String,
    pub label_pct: Provenance<f64>,
    pub reference_pct: f64,
    /// Label share minus reference share; `None` when the label share is not reported.
    pub gap_pp: Option<f64>,
    pub flagged: bool,
}

impl AuditGroup {
    pub fn is_auditable(&self) -> bool {
        self.gap_pp.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryDisparity {
    pub category: String,
    /// Highest minus lowest reported group accuracy; `None` with fewer than two.
    pub accuracy_spread: Option<f64>,
    pub groups_reported: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub reference: String,
    pub threshold_pp: f64,
    pub groups: Vec<AuditGroup>,
    pub disparity: Vec<CategoryDisparity>,
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn flag_count(&self) -> usize {
        self.groups.iter().filter(|g| g.flagged).count()
    }
}

/// Compares each group's share of the test data with its share of the
/// reference population.
///
/// A group is flagged when its gap exceeds `threshold_pp` percentage points
/// in either direction. Groups whose label share is not reported cannot be
/// audited and are never flagged.
pub fn representation_audit(
    label: &ModelFactsLabel,
    reference: &ReferencePopulation,
    threshold_pp: f64,
) -> Result<AuditReport, LabelError> {
    if !threshold_pp.is_finite() || threshold_pp < 0.0 {
        return Err(LabelError::InvalidThreshold(threshold_pp));
    }
    let mut groups = Vec::new();
    let mut shared = 0;
    for cat in &label.demographics {
        let Some((_, ref_groups)) = reference.categories.iter().find(|(c, _)| c.eq_ignore_ascii_case(&cat.name)) else {
            continue;
        };
        shared += 1;
        let mut ordered: Vec<(&String, f64)> = Vec::new();
        for row in &cat.rows {
            if let Some((g, pct)) = ref_groups.iter().find(|(g, _)| g.eq_ignore_ascii_case(&row.group)) {
                ordered.push((g, *pct));
            }
        }
        for (g, pct) in ref_groups {
            if !ordered.iter().any(|(o, _)| *o == g) {
                ordered.push((g, *pct));
            }
        }
        for (g, reference_pct) in ordered {
            let row = cat.rows.iter().find(|r| r.group.eq_ignore_ascii_case(g));
            let label_pct = row.map(|r| r.pct_in_test).unwrap_or(Provenance::NotCollected);
            let gap_pp = label_pct.value().map(|v| v - reference_pct);
            let flagged = gap_pp.is_some_and(|gap| gap.abs() > threshold_pp);
            groups.push(AuditGroup {
                category: cat.name.clone(),
                group: row.map(|r| r.group.clone()).unwrap_or_else(|| g.clone()),
                label_pct,
                reference_pct,
                gap_pp,
                flagged,
            });
        }
    }
    if shared == 0 {
        return Err(LabelError::NoOverlap(reference.name.clone()));
    }

    let disparity = label
        .demographics
        .iter()
        .map(|cat| {
            let accs: Vec<f64> = cat.rows.iter().filter_map(|r| r.accuracy.value().copied()).collect();
            let spread = (accs.len() >= 2).then(|| {
                let max = accs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let min = accs.iter().copied().fold(f64::INFINITY, f64::min);
                max - min
            });
            CategoryDisparity { category: cat.name.clone(), accuracy_spread: spread, groups_reported: accs.len() }
        })
        .collect();

    let mut notes = Vec::new();
    let unauditable = groups.iter().filter(|g| !g.is_auditable()).count();
    if unauditable > 0 {
        notes.push(format!(
            "{unauditable} of {} groups have no reported share of the test data and cannot be audited; there is potential for unreported biases.",
            groups.len()
        ));
    }
    Ok(AuditReport { reference: reference.name.clone(), threshold_pp, groups, disparity, notes })
}
