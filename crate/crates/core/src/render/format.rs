//! Number and cell formatting shared by the text and HTML renderers.

use crate::label::{Provenance, ProvenanceState, TargetStat};

fn fixed(v: f64, places: usize) -> String {
    let s = format!("{v:.places$}");
    // "-0.000" reads as a sign error on a consumer label
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Raw scores: three decimal places.
pub fn format_score(v: f64) -> String {
    fixed(v, 3)
}

/// Percentages: one decimal place and a trailing `%`.
pub fn format_pct(v: f64) -> String {
    format!("{}%", fixed(v, 1))
}

/// Counts with comma thousands separators.
pub fn format_count(n: u64) -> String {
    let digits = n.to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(ch);
    }
    out
}

pub fn format_target(t: &TargetStat) -> String {
    match t {
        TargetStat::PctTarget { pct } => format_pct(*pct),
        TargetStat::MeanStd { mean, std } => format!("{} ({})", format_score(*mean), format_score(*std)),
    }
}

/// Placeholder text for a cell without a value.
pub fn placeholder(state: ProvenanceState) -> &'static str {
    match state {
        ProvenanceState::Reported => "",
        ProvenanceState::AvailableUnreported => "[not reported]",
        ProvenanceState::UnknownAvailability => "[unknown]",
        ProvenanceState::NotCollected => "[not collected]",
    }
}

pub fn format_cell<T>(cell: &Provenance<T>, fmt: impl Fn(&T) -> String) -> String {
    match cell {
        Provenance::Reported(v) => fmt(v),
        other => placeholder(other.state()).to_string(),
    }
}
