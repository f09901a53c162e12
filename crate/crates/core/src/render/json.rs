//! Canonical JSON: sorted keys, two-space indentation, shortest round-trip
//! numbers, UTF-8, trailing newline.

use serde::Serialize;
use serde_json::Value;

use crate::ingest::IngestError;
use crate::label::{ModelFactsLabel, SUPPORTED_SCHEMA_VERSIONS};

fn write_string(out: &mut String, s: &str) {
    out.push_str(&serde_json::to_string(s).expect("strings always serialize"));
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let indent = |out: &mut String, d: usize| {
        out.push('\n');
        out.push_str(&"  ".repeat(d));
    };
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => out.push_str(&n.to_string()),
        Value::String(s) => write_string(out, s),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                indent(out, depth + 1);
                write_value(out, item, depth + 1);
            }
            indent(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                indent(out, depth + 1);
                write_string(out, k);
                out.push_str(": ");
                write_value(out, &map[k], depth + 1);
            }
            indent(out, depth);
            out.push('}');
        }
    }
}

/// Canonical JSON text for any serializable value.
pub fn to_canonical_string<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("label types serialize to JSON");
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    out
}

pub fn write_canonical<T: Serialize>(value: &T) -> Vec<u8> {
    to_canonical_string(value).into_bytes()
}

/// Serializes a label to canonical JSON bytes.
pub fn to_canonical_json(label: &ModelFactsLabel) -> Vec<u8> {
    write_canonical(label)
}

/// Reads a canonical label; unknown fields and unsupported versions are rejected.
pub fn from_canonical_json(bytes: &[u8]) -> Result<ModelFactsLabel, IngestError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| IngestError::schema("$", e.to_string()))?;
    match value.get("schema_version") {
        Some(Value::String(v)) if !SUPPORTED_SCHEMA_VERSIONS.contains(&v.as_str()) => {
            return Err(IngestError::UnsupportedVersion(v.clone()));
        }
        _ => {}
    }
    serde_path_to_error::deserialize(value).map_err(|e| match crate::ingest::manifest::classify(e) {
        IngestError::UnknownMetric { path, reason } | IngestError::DateParse { path, reason } => {
            IngestError::Schema { path, reason }
        }
        other => other,
    })
}
