//! `model-facts` command-line front end.
//!
//! Exit codes: 0 success, 1 violations found (or audit flags with
//! `--strict`), 2 input or schema error, 3 internal error.

mod report;

use std::fs;
use std::io::{self, IsTerminal, Write};
use std::panic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use model_facts::labelgen::DEFAULT_THRESHOLD_PP;
use model_facts::render::to_canonical_string;
use model_facts::{
    build_declared_label, compare_labels, from_canonical_json, generate_label, parse_label_manifest, parse_predictions,
    parse_reference_population, render_html, render_text, representation_audit, to_canonical_json, validate_label,
    IngestError, ModelFactsLabel, RenderBudget,
};

const EXIT_FINDINGS: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "model-facts", version, about = "Build, check and render Model Facts labels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a label from a predictions file and a manifest.
    Generate {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        manifest: PathBuf,
        /// Output path; standard output if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a label from manifest declarations alone.
    Declare {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a label against the content and layout rules.
    Validate {
        label: PathBuf,
        #[arg(long, default_value_t = RenderBudget::DEFAULT.max_lines())]
        max_lines: usize,
        #[arg(long, default_value_t = RenderBudget::DEFAULT.width())]
        width: usize,
        #[arg(long)]
        json: bool,
    },
    /// Render a label as fixed-width text or HTML.
    Render {
        label: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = RenderBudget::DEFAULT.width())]
        width: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rank labels by optimized score and list comparability caveats.
    Compare {
        #[arg(required = true)]
        labels: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Compare demographic shares against a reference population.
    Audit {
        label: PathBuf,
        #[arg(long)]
        reference: PathBuf,
        #[arg(long, default_value_t = DEFAULT_THRESHOLD_PP)]
        threshold_pp: f64,
        /// Exit 1 when any group is flagged.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Html,
}

struct Failure {
    code: String,
    message: String,
    exit: u8,
}

impl Failure {
    fn input(code: &str, message: impl Into<String>) -> Self {
        Failure { code: code.to_string(), message: message.into(), exit: EXIT_INPUT }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: "INTERNAL".to_string(), message: message.into(), exit: EXIT_INTERNAL }
    }
}

impl From<model_facts::LabelError> for Failure {
    fn from(e: model_facts::LabelError) -> Self {
        Failure::input(e.code(), e.to_string())
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::input("IO_ERROR", format!("{}: {e}", path.display())))
}

fn read_label(path: &Path) -> Result<ModelFactsLabel, Failure> {
    from_canonical_json(&read(path)?).map_err(|e| Failure::input(e.code(), format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure::internal(format!("{}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes).and_then(|_| out.flush()).map_err(|e| Failure::internal(format!("stdout: {e}")))
        }
    }
}

fn label_id(path: &Path) -> String {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    name.strip_suffix(".label.json").or_else(|| name.strip_suffix(".json")).unwrap_or(&name).to_string()
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Generate { data, manifest, output } => {
            let parsed = parse_label_manifest(&read(&manifest)?)
                .map_err(|e| Failure::input(e.code(), format!("{}: {e}", manifest.display())))?;
            let dataset = parse_predictions(read(&data)?.as_slice(), &parsed).map_err(|e| {
                // schema errors here are about the manifest, everything else about the data
                let source = if matches!(e, IngestError::Schema { .. }) { &manifest } else { &data };
                Failure::input(e.code(), format!("{}: {e}", source.display()))
            })?;
            let label = generate_label(&dataset, &parsed)?;
            emit(output.as_deref(), &to_canonical_json(&label))?;
            Ok(0)
        }
        Command::Declare { manifest, output } => {
            let manifest = parse_label_manifest(&read(&manifest)?)
                .map_err(|e| Failure::input(e.code(), format!("{}: {e}", manifest.display())))?;
            let label = build_declared_label(&manifest)?;
            emit(output.as_deref(), &to_canonical_json(&label))?;
            Ok(0)
        }
        Command::Validate { label, max_lines, width, json } => {
            let budget =
                RenderBudget::new(max_lines, width).map_err(|e| Failure::input("INVALID_BUDGET", e.to_string()))?;
            let violations = validate_label(&read_label(&label)?, &budget);
            let text = if json { to_canonical_string(&violations) } else { report::violations(&violations) };
            emit(None, text.as_bytes())?;
            if !violations.is_empty() {
                eprintln!("{}: {} violation(s)", label.display(), violations.len());
                return Ok(EXIT_FINDINGS);
            }
            Ok(0)
        }
        Command::Render { label, format, width, output } => {
            let label = read_label(&label)?;
            let text = match format {
                Format::Text => {
                    let budget = RenderBudget::new(RenderBudget::DEFAULT.max_lines(), width)
                        .map_err(|e| Failure::input("INVALID_BUDGET", e.to_string()))?;
                    render_text(&label, &budget)
                }
                Format::Html => render_html(&label),
            };
            emit(output.as_deref(), text.as_bytes())?;
            Ok(0)
        }
        Command::Compare { labels, json } => {
            let loaded =
                labels.iter().map(|p| Ok((label_id(p), read_label(p)?))).collect::<Result<Vec<_>, Failure>>()?;
            let report = compare_labels(&loaded);
            let text = if json { to_canonical_string(&report) } else { report::comparison(&report) };
            emit(None, text.as_bytes())?;
            Ok(0)
        }
        Command::Audit { label, reference, threshold_pp, strict, json } => {
            let label = read_label(&label)?;
            let population = parse_reference_population(&read(&reference)?)
                .map_err(|e| Failure::input(e.code(), format!("{}: {e}", reference.display())))?;
            let report = representation_audit(&label, &population, threshold_pp)?;
            let text = if json { to_canonical_string(&report) } else { report::audit(&report) };
            emit(None, text.as_bytes())?;
            if strict && report.flag_count() > 0 {
                eprintln!("{} group(s) flagged", report.flag_count());
                return Ok(EXIT_FINDINGS);
            }
            Ok(0)
        }
    }
}

fn error_prefix() -> &'static str {
    let stderr = io::stderr();
    if stderr.is_terminal() && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) {
        "\x1b[1;31merror\x1b[0m"
    } else {
        "error"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    panic::set_hook(Box::new(|_| {}));
    let outcome = panic::catch_unwind(|| run(cli)).unwrap_or_else(|payload| {
        let message = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unexpected failure".to_string());
        Err(Failure::internal(message))
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}: {}: {}", error_prefix(), f.code, f.message);
            ExitCode::from(f.exit)
        }
    }
}
