//! Fixed-width text rendering.
//!
//! Layout at width `W`: tables use a label column of `W - 48` columns
//! followed by three right-aligned 16-column cells. A row whose label or
//! cells do not fit is printed stacked instead (label on its own line, then
//! one `Header: value` line per cell), so no line ever exceeds `W`. Content
//! is never truncated.

use textwrap::{Options, WordSeparator, WordSplitter, WrapAlgorithm};
use unicode_width::UnicodeWidthStr;

use super::format::{format_cell, format_count, format_pct, format_score, format_target};
use super::RenderBudget;
use crate::label::{DemographicGroupRow, MetricValue, ModelFactsLabel};

const CELL: usize = 16;
const KEY: usize = 18;

/// Display columns occupied by `s`.
pub fn display_width(s: &str) -> usize {
    UnicodeWidthStr::width(s)
}

fn clean(text: &str) -> String {
    text.chars().map(|c| if c.is_control() { ' ' } else { c }).collect()
}

struct Page {
    width: usize,
    lines: Vec<String>,
}

impl Page {
    fn push(&mut self, line: impl Into<String>) {
        let line = line.into();
        self.lines.push(line.trim_end_matches(' ').to_string());
    }

    fn rule(&mut self, ch: char) {
        self.push(ch.to_string().repeat(self.width));
    }

    fn wrapped(&mut self, text: &str, first: &str, rest: &str) {
        let text = clean(text);
        let opts = Options::new(self.width)
            .initial_indent(first)
            .subsequent_indent(rest)
            .word_separator(WordSeparator::AsciiSpace)
            .word_splitter(WordSplitter::NoHyphenation)
            .wrap_algorithm(WrapAlgorithm::FirstFit)
            .break_words(true);
        let lines = textwrap::wrap(text.trim(), opts);
        if lines.is_empty() {
            self.push(first);
        }
        for l in lines {
            self.push(l.into_owned());
        }
    }

    fn label_width(&self) -> usize {
        self.width - 3 * CELL
    }

    /// One table row; falls back to a stacked layout when anything is too wide.
    fn row(&mut self, indent: usize, label: &str, cells: &[String], headers: &[&str]) {
        let label = clean(label);
        let pad = " ".repeat(indent);
        let fits =
            indent + display_width(&label) <= self.label_width() && cells.iter().all(|c| display_width(c) < CELL);
        if fits {
            let mut line = format!("{pad}{label}");
            line.push_str(&" ".repeat(self.label_width() - display_width(&line)));
            for c in cells {
                line.push_str(&" ".repeat(CELL - display_width(c)));
                line.push_str(c);
            }
            self.push(line);
        } else {
            if !label.is_empty() {
                self.wrapped(&label, &pad, &pad);
            }
            let inner = " ".repeat(indent + 2);
            let hang = " ".repeat(indent + 4);
            for (h, c) in headers.iter().zip(cells) {
                self.wrapped(&format!("{h}: {c}"), &inner, &hang);
            }
        }
    }

    /// Section heading followed by right-aligned column headers.
    fn header(&mut self, title: &str, headers: &[&str]) {
        let cells: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
        if display_width(title) <= self.label_width() {
            self.row(0, title, &cells, headers);
        } else {
            self.push(title);
            let mut line = " ".repeat(self.label_width());
            for h in headers {
                line.push_str(&" ".repeat(CELL - display_width(h)));
                line.push_str(h);
            }
            self.push(line);
        }
    }

    fn key_value(&mut self, key: &str, value: &str) {
        let first = format!("{key:<KEY$}");
        self.wrapped(value, &first, &" ".repeat(KEY));
    }

    fn note(&mut self, indent: usize, note: &Option<String>) {
        if let Some(n) = note {
            let pad = " ".repeat(indent);
            self.wrapped(n, &pad, &pad);
        }
    }
}

fn metric_cells(m: &MetricValue) -> Vec<String> {
    vec![
        m.name.to_string(),
        format_cell(&m.pct_over_baseline, |v| format_pct(*v)),
        format_cell(&m.raw_score, |v| format_score(*v)),
    ]
}

fn group_cells(row: &DemographicGroupRow) -> Vec<String> {
    vec![
        format_cell(&row.pct_in_test, |v| format_pct(*v)),
        format_cell(&row.accuracy, |v| format_score(*v)),
        format_cell(&row.target, format_target),
    ]
}

/// Renders the label as fixed-width text.
///
/// Non-reported cells appear as `[not reported]`, `[unknown]` or
/// `[not collected]`. The output ends with exactly one newline and has no
/// trailing spaces. Overflowing the page budget is left to the validator.
pub fn render_text(label: &ModelFactsLabel, budget: &RenderBudget) -> String {
    let width = budget.width();
    let mut page = Page { width, lines: Vec::new() };

    let title = "MODEL FACTS";
    page.push(format!("{}{title}", " ".repeat((width - title.len()) / 2)));
    page.rule('=');

    let app = &label.application;
    page.push("Application:");
    page.wrapped(&app.application, "  ", "  ");
    page.key_value("Model Type:", app.model_type.display_name());
    page.key_value("Model Train Date:", &app.model_train_date.to_string());
    page.key_value("Test Data Date:", &app.test_data_range.to_string());
    page.rule('=');

    let acc_headers = ["Name", "% Over Baseline", "Raw Score"];
    page.header("Accuracy", &acc_headers);
    page.rule('-');
    for (title, metric) in
        [("Optimized Score", &label.accuracy.optimized), ("Standard Score", &label.accuracy.standard)]
    {
        page.row(0, title, &metric_cells(metric), &acc_headers);
        page.note(2, &metric.note);
    }
    page.rule('=');

    let ds_headers = ["Count", "% Train", "% Test"];
    page.header("Dataset Size", &ds_headers);
    page.rule('-');
    let ds = &label.dataset;
    let ds_cells = vec![
        format_cell(&ds.sample_count, |n| format_count(*n)),
        format_cell(&ds.train_pct, |v| format_pct(*v)),
        format_cell(&ds.test_pct, |v| format_pct(*v)),
    ];
    page.row(0, "Samples", &ds_cells, &ds_headers);
    page.note(2, &ds.note);
    page.rule('=');

    let target_header = if app.model_type.is_classification() { "% Target" } else { "Mean (std)" };
    let demo_headers = ["% In Test Data", "Accuracy", target_header];
    page.header("Demographics", &demo_headers);
    for cat in &label.demographics {
        page.rule('-');
        page.wrapped(&cat.name, "", "");
        page.rule('-');
        page.note(2, &cat.note);
        for row in &cat.rows {
            page.row(2, &row.group, &group_cells(row), &demo_headers);
            page.note(4, &row.note);
        }
    }
    page.rule('=');

    page.push("Warnings");
    page.rule('-');
    if label.warnings.is_empty() {
        page.push("(none declared)");
    }
    for w in &label.warnings {
        page.wrapped(w, "- ", "  ");
    }
    page.rule('=');

    let mut out = page.lines.join("\n");
    out.push('\n');
    out
}
