use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn golden(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(file)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_model-facts")).args(args).env("NO_COLOR", "1").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Declares both golden labels into a temp dir.
fn declared(dir: &TempDir) -> (PathBuf, PathBuf) {
    let mut out = Vec::new();
    for name in ["void", "suicide_risk"] {
        let path = dir.path().join(format!("{name}.label.json"));
        let o = run(&["declare", "--manifest", p(&golden(&format!("{name}.manifest.json"))), "-o", p(&path)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        out.push(path);
    }
    (out.remove(0), out.remove(0))
}

const MANIFEST: &str = r#"{
  "schema_version": "1.0",
  "application": "Flag accounts for review",
  "model_type": "balanced_classification",
  "model_train_date": "2023",
  "test_data_range": "2024",
  "positive_class": "pos",
  "optimized_metric": {"name": "Accuracy"},
  "warnings": ["Synthetic data."]
}"#;

const DATA: &str = "id,y_true,y_pred,gender\n1,pos,pos,Female\n2,neg,neg,Female\n3,neg,pos,Male\n4,pos,pos,Male\n";

#[test]
fn declare_then_render_reproduces_goldens() {
    let dir = TempDir::new().unwrap();
    let (void, suicide) = declared(&dir);
    assert_eq!(fs::read(&void).unwrap(), fs::read(golden("void.label.json")).unwrap());
    assert_eq!(fs::read(&suicide).unwrap(), fs::read(golden("suicide_risk.label.json")).unwrap());

    let o = run(&["render", p(&void), "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, fs::read(golden("void.label.txt")).unwrap());
    let html = dir.path().join("s.html");
    let o = run(&["render", p(&suicide), "--format", "html", "-o", p(&html)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read(html).unwrap(), fs::read(golden("suicide_risk.label.html")).unwrap());
}

#[test]
fn declare_errors() {
    let dir = TempDir::new().unwrap();
    let o = run(&["declare", "--manifest", p(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: IO_ERROR: "), "{}", stderr(&o));

    let m = dir.path().join("m.json");
    fs::write(&m, MANIFEST).unwrap();
    let o = run(&["declare", "--manifest", p(&m)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("SCHEMA_ERROR"), "{}", stderr(&o));

    fs::write(&m, MANIFEST.replace("Accuracy", "Kappa")).unwrap();
    let o = run(&["declare", "--manifest", p(&m)]);
    assert!(stderr(&o).contains("UNKNOWN_METRIC"), "{}", stderr(&o));
}

#[test]
fn generate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (m, d) = (dir.path().join("m.json"), dir.path().join("d.csv"));
    fs::write(&m, MANIFEST).unwrap();
    fs::write(&d, DATA).unwrap();
    let a = run(&["generate", "--data", p(&d), "--manifest", p(&m)]);
    let b = run(&["generate", "--data", p(&d), "--manifest", p(&m)]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let label: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(label["accuracy"]["optimized"]["raw_score"]["value"], 0.75);

    let out = dir.path().join("x.label.json");
    let o = run(&["generate", "--data", p(&d), "--manifest", p(&m), "-o", p(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(out).unwrap(), a.stdout);
}

#[test]
fn generate_errors() {
    let dir = TempDir::new().unwrap();
    let (m, d) = (dir.path().join("m.json"), dir.path().join("d.csv"));
    fs::write(&m, MANIFEST).unwrap();
    fs::write(&d, "id,y_pred\n1,pos\n").unwrap();
    let o = run(&["generate", "--data", p(&d), "--manifest", p(&m)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("MISSING_COLUMN"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());

    fs::write(&d, DATA).unwrap();
    fs::write(&m, MANIFEST.replace(r#"{"name": "Accuracy"}"#, r#"{"name": "Accuracy", "raw": 0.9}"#)).unwrap();
    let o = run(&["generate", "--data", p(&d), "--manifest", p(&m)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("DECLARED_CONFLICT"), "{}", stderr(&o));

    // writing into a directory that does not exist is not an input problem
    fs::write(&m, MANIFEST).unwrap();
    let out = dir.path().join("nowhere/x.label.json");
    let o = run(&["generate", "--data", p(&d), "--manifest", p(&m), "-o", p(&out)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error: INTERNAL: "));
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let (void, _) = declared(&dir);
    let o = run(&["validate", p(&void)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "no violations\n");
    let o = run(&["validate", p(&void), "--json"]);
    assert_eq!(stdout(&o), "[]\n");

    let mut label: serde_json::Value = serde_json::from_slice(&fs::read(&void).unwrap()).unwrap();
    label["application"]["application"] = "x".repeat(250).into();
    let long = dir.path().join("overlong.label.json");
    fs::write(&long, label.to_string()).unwrap();
    let o = run(&["validate", p(&long)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("APPLICATION_TOO_LONG: application.application: "), "{}", stdout(&o));
    let o = run(&["validate", p(&long), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["code"], "APPLICATION_TOO_LONG");
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["validate", p(&void), "--max-lines", "20"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("INVALID_BUDGET"));

    let o = run(&["validate", p(&void), "--max-lines", "40"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("PAGE_OVERFLOW"));
}

#[test]
fn render_errors() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.label.json");
    fs::write(&bad, "{\"schema_version\": \"1.0\"}").unwrap();
    let o = run(&["render", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("SCHEMA_ERROR"));

    fs::write(&bad, "not json").unwrap();
    assert_eq!(run(&["render", p(&bad), "--format", "html"]).status.code(), Some(2));
    assert_eq!(run(&["render", p(&bad), "--format", "pdf"]).status.code(), Some(2));
}

#[test]
fn compare_text_and_json() {
    let dir = TempDir::new().unwrap();
    let (void, suicide) = declared(&dir);
    let o = run(&["compare", p(&suicide), p(&void)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("  1. void: AUC 0.939"), "{text}");
    assert!(text.contains("  2. suicide_risk: AUC 0.800"), "{text}");
    assert!(text.contains("different applications"));

    let o = run(&["compare", p(&suicide), p(&void), "--json"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["ranking"], serde_json::json!(["void", "suicide_risk"]));
    assert_eq!(report["caveats"].as_array().unwrap().len(), 2);

    let o = run(&["compare", p(&void), p(&dir.path().join("gone.label.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["compare"]).status.code(), Some(2));
}

#[test]
fn audit_strict_and_errors() {
    let dir = TempDir::new().unwrap();
    let (m, d) = (dir.path().join("m.json"), dir.path().join("d.csv"));
    fs::write(&m, MANIFEST).unwrap();
    // Female 75%
    fs::write(&d, "id,y_true,y_pred,gender\n1,pos,pos,Female\n2,neg,neg,Female\n3,neg,pos,Female\n4,pos,pos,Male\n")
        .unwrap();
    let label = dir.path().join("g.label.json");
    assert_eq!(run(&["generate", "--data", p(&d), "--manifest", p(&m), "-o", p(&label)]).status.code(), Some(0));
    let reference = dir.path().join("ref.json");
    fs::write(&reference, r#"{"name": "census", "categories": {"Gender": {"Female": 50, "Male": 50}}}"#).unwrap();

    let o = run(&["audit", p(&label), "--reference", p(&reference)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("Gender / Female: label 75.0%, reference 50.0%, gap +25.0 pp FLAGGED"),
        "{}",
        stdout(&o)
    );
    let o = run(&["audit", p(&label), "--reference", p(&reference), "--strict"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["audit", p(&label), "--reference", p(&reference), "--strict", "--threshold-pp", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["audit", p(&label), "--reference", p(&reference), "--json"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["groups"][0]["flagged"], true);

    let o = run(&["audit", p(&label), "--reference", p(&reference), "--threshold-pp=-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("INVALID_THRESHOLD"));

    fs::write(&reference, r#"{"name": "towns", "categories": {"Region": {"North": 100}}}"#).unwrap();
    let o = run(&["audit", p(&label), "--reference", p(&reference)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NO_OVERLAP"));

    fs::write(&reference, r#"{"name": "x", "categories": {"Gender": {"Female": 10}}}"#).unwrap();
    let o = run(&["audit", p(&label), "--reference", p(&reference)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("SCHEMA_ERROR"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
