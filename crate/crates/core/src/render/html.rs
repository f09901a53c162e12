//! Self-contained HTML rendering with provenance-colored cells.
//!
//! Every data cell sits on its own line so that a change to one cell
//! changes exactly one line of output.

use std::fmt::Write;

use super::format::{format_count, format_pct, format_score, format_target, placeholder};
use crate::label::{CellColor, DemographicGroupRow, MetricValue, ModelFactsLabel, Provenance};

const STYLE: &str = "body { font-family: Helvetica, Arial, sans-serif; margin: 2em; }
table.model-facts { border: 2px solid #000; border-collapse: collapse; max-width: 40em; }
table.model-facts caption { font-size: 1.8em; font-weight: bold; text-align: left; padding: 0.2em 0; }
table.model-facts th, table.model-facts td { padding: 0.2em 0.5em; text-align: left; border-top: 1px solid #999; }
table.model-facts th.section { border-top: 4px solid #000; font-size: 1.1em; }
table.model-facts td.cell { text-align: right; }
table.model-facts td.note { font-style: italic; }
table.model-facts th.group { padding-left: 1.5em; font-weight: normal; }
.prov-green { background-color: #b7e1a1; }
.prov-yellow { background-color: #fbe89a; }
.prov-red { background-color: #f4a3a3; }";

pub(crate) fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c if c.is_control() && c != '\n' && c != '\t' => out.push(' '),
            c => out.push(c),
        }
    }
    out
}

fn class_for(color: CellColor) -> &'static str {
    match color {
        CellColor::None => "cell",
        CellColor::Green => "cell prov-green",
        CellColor::Yellow => "cell prov-yellow",
        CellColor::Red => "cell prov-red",
    }
}

fn cell<T>(out: &mut String, value: &Provenance<T>, fmt: impl Fn(&T) -> String) {
    let text = match value {
        Provenance::Reported(v) => fmt(v),
        other => placeholder(other.state()).trim_matches(|c| c == '[' || c == ']').to_string(),
    };
    let _ = writeln!(out, "<td class=\"{}\">{}</td>", class_for(value.color()), escape(&text));
}

fn note_row(out: &mut String, note: &Option<String>) {
    if let Some(n) = note {
        let _ = writeln!(out, "<tr><td colspan=\"4\" class=\"note\">{}</td></tr>", escape(n));
    }
}

fn metric_row(out: &mut String, title: &str, m: &MetricValue) {
    let _ = writeln!(out, "<tr>\n<th scope=\"row\">{title}</th>");
    let _ = writeln!(out, "<td>{}</td>", escape(m.name.name()));
    cell(out, &m.pct_over_baseline, |v| format_pct(*v));
    cell(out, &m.raw_score, |v| format_score(*v));
    out.push_str("</tr>\n");
    note_row(out, &m.note);
}

fn group_row(out: &mut String, row: &DemographicGroupRow) {
    let _ = writeln!(out, "<tr>\n<th scope=\"row\" class=\"group\">{}</th>", escape(&row.group));
    cell(out, &row.pct_in_test, |v| format_pct(*v));
    cell(out, &row.accuracy, |v| format_score(*v));
    cell(out, &row.target, format_target);
    out.push_str("</tr>\n");
    note_row(out, &row.note);
}

/// Renders the label as a standalone HTML5 document.
///
/// Non-reported cells carry the `prov-green`, `prov-yellow` or `prov-red`
/// class. The markup is also well-formed XML.
pub fn render_html(label: &ModelFactsLabel) -> String {
    let mut out = String::new();
    out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\" />\n");
    out.push_str("<title>Model Facts</title>\n<style>\n");
    out.push_str(STYLE);
    out.push_str("\n</style>\n</head>\n<body>\n<table class=\"model-facts\">\n<caption>Model Facts</caption>\n");

    let app = &label.application;
    out.push_str("<tbody class=\"application\">\n");
    out.push_str("<tr><th colspan=\"4\" class=\"section\">Application</th></tr>\n");
    for (key, value) in [
        ("Application", app.application.clone()),
        ("Model Type", app.model_type.display_name().to_string()),
        ("Model Train Date", app.model_train_date.to_string()),
        ("Test Data Date", app.test_data_range.to_string()),
    ] {
        let _ = writeln!(out, "<tr><th scope=\"row\">{key}</th><td colspan=\"3\">{}</td></tr>", escape(&value));
    }
    out.push_str("</tbody>\n");

    out.push_str("<tbody class=\"accuracy\">\n");
    out.push_str(
        "<tr><th class=\"section\">Accuracy</th><th>Name</th><th>% Over Baseline</th><th>Raw Score</th></tr>\n",
    );
    metric_row(&mut out, "Optimized Score", &label.accuracy.optimized);
    metric_row(&mut out, "Standard Score", &label.accuracy.standard);
    out.push_str("</tbody>\n");

    let ds = &label.dataset;
    out.push_str("<tbody class=\"dataset\">\n");
    out.push_str("<tr><th class=\"section\">Dataset Size</th><th>Count</th><th>% Train</th><th>% Test</th></tr>\n");
    out.push_str("<tr>\n<th scope=\"row\">Samples</th>\n");
    cell(&mut out, &ds.sample_count, |n| format_count(*n));
    cell(&mut out, &ds.train_pct, |v| format_pct(*v));
    cell(&mut out, &ds.test_pct, |v| format_pct(*v));
    out.push_str("</tr>\n");
    note_row(&mut out, &ds.note);
    out.push_str("</tbody>\n");

    let target = if app.model_type.is_classification() { "% Target" } else { "Mean (std)" };
    out.push_str("<tbody class=\"demographics\">\n");
    let _ = writeln!(
        out,
        "<tr><th class=\"section\">Demographics</th><th>% In Test Data</th><th>Accuracy</th><th>{target}</th></tr>"
    );
    for cat in &label.demographics {
        let _ = writeln!(out, "<tr><th colspan=\"4\">{}</th></tr>", escape(&cat.name));
        note_row(&mut out, &cat.note);
        for row in &cat.rows {
            group_row(&mut out, row);
        }
    }
    out.push_str("</tbody>\n");

    out.push_str("<tbody class=\"warnings\">\n");
    out.push_str("<tr><th colspan=\"4\" class=\"section\">Warnings</th></tr>\n");
    out.push_str("<tr><td colspan=\"4\">\n");
    if label.warnings.is_empty() {
        out.push_str("<p>None declared.</p>\n");
    } else {
        out.push_str("<ul>\n");
        for w in &label.warnings {
            let _ = writeln!(out, "<li>{}</li>", escape(w));
        }
        out.push_str("</ul>\n");
    }
    out.push_str("</td></tr>\n</tbody>\n</table>\n</body>\n</html>\n");
    out
}
