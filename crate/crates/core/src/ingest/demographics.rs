use std::collections::BTreeMap;

use super::IngestError;
use crate::label::canonical_groups;

/// Age buckets in display order.
pub const AGE_BUCKETS: [&str; 5] = ["<17", "18-24", "25-34", "35-49", "50+"];

/// Maps an age in whole years onto its bucket.
///
/// Age 17 falls in `<17`: the canonical buckets skip it, and it is treated
/// as part of the minor bucket.
pub fn bucket_age(age_years: u32) -> Result<&'static str, IngestError> {
    let idx = match age_years {
        0..=17 => 0,
        18..=24 => 1,
        25..=34 => 2,
        35..=49 => 3,
        50..=150 => 4,
        _ => return Err(IngestError::ImplausibleAge(age_years)),
    };
    Ok(AGE_BUCKETS[idx])
}

/// Position of a bucket name in [`AGE_BUCKETS`].
pub fn age_bucket_index(bucket: &str) -> Option<usize> {
    AGE_BUCKETS.iter().position(|b| *b == bucket)
}

/// Normalizes a raw demographic value.
///
/// Aliases are consulted first (keys compared ignoring case), then canonical
/// group names ignoring case. For canonical categories anything unmatched,
/// including a blank value, becomes `Other`; other categories keep the
/// trimmed value.
pub fn normalize_group(category: &str, raw: &str, aliases: &BTreeMap<String, String>) -> String {
    let value = raw.trim();
    let value =
        aliases.iter().find(|(k, _)| k.trim().eq_ignore_ascii_case(value)).map(|(_, v)| v.as_str()).unwrap_or(value);
    match canonical_groups(category) {
        Some(groups) => groups.iter().find(|g| g.eq_ignore_ascii_case(value)).unwrap_or(&"Other").to_string(),
        None if value.is_empty() => "Other".to_string(),
        None => value.to_string(),
    }
}
