use std::collections::BTreeMap;
use std::io::Read;

use super::demographics::{bucket_age, normalize_group, AGE_BUCKETS};
use super::{IngestError, LabelManifest, Outcome, PredictionDataset, PredictionRecord};

/// Column roles resolved from the header row.
struct Columns {
    id: usize,
    truth: usize,
    prediction: Option<usize>,
    score: Option<usize>,
    /// (column index, category name as listed in the manifest)
    attributes: Vec<(usize, String)>,
}

fn resolve_columns(headers: &csv::StringRecord, manifest: &LabelManifest) -> Result<Columns, IngestError> {
    let find = |name: &str| headers.iter().position(|h| h.trim().eq_ignore_ascii_case(name));
    let id = find("id").ok_or_else(|| IngestError::MissingColumn("id".into()))?;
    let truth = find("y_true").ok_or_else(|| IngestError::MissingColumn("y_true".into()))?;
    let prediction = find("y_pred");
    let score = find("score");

    let metric = manifest.optimized();
    if metric.needs_score() && score.is_none() {
        return Err(IngestError::MissingColumn("score".into()));
    }
    if !metric.needs_score() && prediction.is_none() {
        return Err(IngestError::MissingColumn("y_pred".into()));
    }

    let attributes =
        manifest.demographics.categories.iter().filter_map(|cat| find(cat).map(|idx| (idx, cat.clone()))).collect();
    Ok(Columns { id, truth, prediction, score, attributes })
}

fn bad(row: usize, column: &str, reason: impl Into<String>) -> IngestError {
    IngestError::BadValue { row, column: column.to_string(), reason: reason.into() }
}

fn parse_outcome(raw: &str, classification: bool, row: usize, column: &str) -> Result<Outcome, IngestError> {
    let v = raw.trim();
    if v.is_empty() {
        return Err(bad(row, column, "value is empty"));
    }
    if classification {
        return Ok(Outcome::Label(v.to_string()));
    }
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(Outcome::Real(x)),
        _ => Err(bad(row, column, format!("{v:?} is not a finite number"))),
    }
}

fn parse_age(raw: &str, row: usize, column: &str) -> Result<String, IngestError> {
    let v = raw.trim();
    if v.is_empty() {
        return Ok("Other".to_string());
    }
    if let Some(bucket) = AGE_BUCKETS.iter().find(|b| **b == v) {
        return Ok(bucket.to_string());
    }
    let years: u32 = v.parse().map_err(|_| bad(row, column, format!("{v:?} is not a whole number of years")))?;
    bucket_age(years).map(str::to_string).map_err(|e| bad(row, column, e.to_string()))
}

/// Reads a comma-separated predictions file.
///
/// Required columns are `id`, `y_true` and either `y_pred` or `score`
/// (`score` when the optimized metric ranks records, `y_pred` otherwise).
/// Columns named after a manifest category become demographic attributes;
/// an `Age` column holds whole years and is bucketed on the way in. Row
/// numbers in errors count data rows from 1, excluding the header.
pub fn parse_predictions<R: Read>(input: R, manifest: &LabelManifest) -> Result<PredictionDataset, IngestError> {
    let classification = manifest.model_type.is_classification();
    if classification && manifest.positive_class.is_none() {
        return Err(IngestError::schema("positive_class", "required for classification models"));
    }
    let mut reader = csv::ReaderBuilder::new().has_headers(true).flexible(false).from_reader(input);
    let headers = match reader.headers() {
        Ok(h) if h.iter().any(|c| !c.trim().is_empty()) => h.clone(),
        Ok(_) => return Err(IngestError::EmptyFile),
        Err(e) => return Err(csv_error(e, 0)),
    };
    let cols = resolve_columns(&headers, manifest)?;
    let needs_score = manifest.optimized().needs_score();
    let score_name = headers.get(cols.score.unwrap_or(0)).unwrap_or("score").trim().to_string();

    let mut records = Vec::new();
    for (i, result) in reader.records().enumerate() {
        let row = i + 1;
        let rec = result.map_err(|e| csv_error(e, row))?;
        let field = |idx: usize| rec.get(idx).unwrap_or("");

        let id = field(cols.id).trim().to_string();
        if id.is_empty() {
            return Err(bad(row, "id", "value is empty"));
        }
        let truth = parse_outcome(field(cols.truth), classification, row, "y_true")?;
        let prediction =
            cols.prediction.map(|idx| parse_outcome(field(idx), classification, row, "y_pred")).transpose()?;
        let score = match cols.score {
            None => None,
            Some(idx) => {
                let v = field(idx).trim();
                if v.is_empty() && !needs_score {
                    None
                } else {
                    match v.parse::<f64>() {
                        Ok(x) if x.is_finite() => Some(x),
                        _ => return Err(bad(row, &score_name, format!("{v:?} is not a finite number"))),
                    }
                }
            }
        };

        let mut attributes = BTreeMap::new();
        for (idx, category) in &cols.attributes {
            let raw = field(*idx);
            let group = if category.eq_ignore_ascii_case("Age") {
                parse_age(raw, row, headers.get(*idx).unwrap_or("age"))?
            } else {
                normalize_group(category, raw, &manifest.aliases_for(category))
            };
            attributes.insert(category.clone(), group);
        }
        records.push(PredictionRecord { id, truth, prediction, score, attributes });
    }

    if records.is_empty() {
        return Err(IngestError::EmptyFile);
    }
    let schema = cols.attributes.into_iter().map(|(_, c)| c).collect();
    PredictionDataset::new(records, manifest.model_type, manifest.positive_class.clone(), schema)
}

fn csv_error(err: csv::Error, row: usize) -> IngestError {
    match err.into_kind() {
        csv::ErrorKind::Io(e) => IngestError::Io(e),
        csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
            bad(row, "*", format!("expected {expected_len} fields, found {len}"))
        }
        csv::ErrorKind::Utf8 { .. } => bad(row, "*", "invalid UTF-8"),
        other => bad(row, "*", format!("{other:?}")),
    }
}
