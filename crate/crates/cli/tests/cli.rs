use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dynsym::formats::StateFile;
use dynsym::observables::ObservableBasis;
use dynsym::states::{coherent_state, CoherentParams};
use dynsym::AnalysisReport;
use serde_json::Value;
use tempfile::TempDir;

fn dynsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynsym")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn generate(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    let out = dynsym(&full);
    assert!(out.status.success());
    write(dir, name, std::str::from_utf8(&out.stdout).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const ZERO: &str = r#"{"dims": [3], "amplitudes": [[0, 0], [1, 0], [0, 0]]}"#;

#[test]
fn analyze_zero_state_under_both_symmetries() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "zero.json", ZERO);
    let spin = json(&dynsym(&["analyze", s(&f)]));
    assert_eq!(spin["basis"], "su2-spin1");
    assert_eq!(spin["mu"].as_f64(), Some(1.0));
    assert_eq!(spin["completely_entangled"], true);
    let su3 = json(&dynsym(&["analyze", s(&f), "--basis", "su3"]));
    assert_eq!(su3["mu"].as_f64(), Some(0.0));
}

#[test]
fn generated_coherent_state_matches_in_memory_analysis() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "coh.json", &["coherent", "--alpha-abs", "0.3"]);
    let report = json(&dynsym(&["analyze", s(&f)]));
    assert!(report["mu"].as_f64().unwrap() < 1e-10);
    assert_eq!(report["squeezing"]["is_squeezed"], false);

    let psi = coherent_state(CoherentParams::from_polar(0.3, 0.0));
    let expected = AnalysisReport::pure(&psi, &ObservableBasis::spin1(), 1e-8).unwrap();
    let parsed: AnalysisReport = serde_json::from_value(report).unwrap();
    assert_eq!(parsed, expected);
    let file: StateFile = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(file.to_state().unwrap(), psi);
}

#[test]
fn maximize_variance_catalog_values() {
    let spin = json(&dynsym(&["maximize-variance", "--basis", "su2-spin1", "--restarts", "8"]));
    assert!((spin["value"].as_f64().unwrap() - 2.0).abs() < 1e-7);
    let pauli = json(&dynsym(&["maximize-variance", "--basis", "pauli-2", "--restarts", "8"]));
    assert!((pauli["value"].as_f64().unwrap() - 6.0).abs() < 1e-7);
    let out = dynsym(&["maximize-variance", "--basis", "su3", "--restarts", "4"]);
    let su3 = json(&out);
    assert!((su3["value"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert!(su3["residual"].as_f64().unwrap() > 0.4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no completely entangled state exists"));
}

#[test]
fn seed_determines_output() {
    let a = dynsym(&["maximize-variance", "--basis", "pauli-2", "--seed", "11", "--restarts", "4"]);
    let b = dynsym(&["maximize-variance", "--basis", "pauli-2", "--seed", "11", "--restarts", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "sq.json", &["squeezed", "--xi-abs", "0.4"]);
    let p1 = dynsym(&["pentagram", s(&f), "--seed", "3", "--restarts", "8"]);
    let p2 = dynsym(&["pentagram", s(&f), "--seed", "3", "--restarts", "8"]);
    assert_eq!(p1.stdout, p2.stdout);
    assert_eq!(json(&p1)["report"]["violated"], true);
}

#[test]
fn regular_pentagram_on_zero_state() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "zero.json", ZERO);
    let r = json(&dynsym(&["pentagram", s(&f), "--regular"]));
    assert_eq!(r["report"]["violated"], true);
    assert!((r["report"]["geometric_value"].as_f64().unwrap() - 2.2360680).abs() < 1e-6);
    let tilted = json(&dynsym(&["pentagram", s(&f), "--regular", "--axis", "1,0,0"]));
    assert!(tilted["report"]["geometric_value"].as_f64().unwrap() < 2.0);
}

#[test]
fn explicit_pentagram_is_repaired_with_warning() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "zero.json", ZERO);
    let reg = json(&dynsym(&["pentagram", s(&f), "--regular"]));
    let mut vertices = reg["pentagram"].clone();
    let x = vertices[2][0].as_f64().unwrap();
    vertices[2][0] = Value::from(x + 5e-7);
    let out = dynsym(&["pentagram", s(&f), "--pentagram", &vertices.to_string()]);
    let r = json(&out);
    assert_eq!(r["mode"], "explicit");
    assert!(!r["warnings"].as_array().unwrap().is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let bad = dynsym(&["pentagram", s(&f), "--pentagram", "[[1,0,0],[1,0,0],[0,1,0],[0,0,1],[0,1,0]]"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn tangle_of_ghz() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "ghz.json", &["ghz"]);
    let r = json(&dynsym(&["tangle", s(&f)]));
    assert_eq!(r["tau"].as_f64(), Some(1.0));
    for c in r["pair_concurrences"].as_array().unwrap() {
        assert!(c.as_f64().unwrap() < 1e-12);
    }
}

#[test]
fn atom_field_concurrence() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "af.json", &["atom-field", "--g1", "1", "--g2", "2"]);
    let r = json(&dynsym(&["concurrence", s(&f)]));
    assert!((r["concurrence"].as_f64().unwrap() - 0.8).abs() < 1e-12);
}

#[test]
fn werner_density_files() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "w.json", &["werner-qutrit", "--x", "0.3"]);
    let r = json(&dynsym(&["concurrence", s(&f)]));
    assert!((r["concurrence"].as_f64().unwrap() - 0.6).abs() < 1e-12);
    let out = dynsym(&["analyze", s(&f)]);
    let a = json(&out);
    assert_eq!(a["mu"], Value::Null);
    assert_eq!(a["pure"], false);
    let f2 = generate(&dir, "w2.json", &["werner-2q", "--x", "0.2"]);
    let r2 = json(&dynsym(&["concurrence", s(&f2)]));
    assert!((r2["concurrence"].as_f64().unwrap() - 0.7).abs() < 1e-12);
}

fn sweep_rows(args: &[&str]) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut full = vec!["sweep"];
    full.extend_from_slice(args);
    let out = dynsym(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn sweeps_match_analytic_columns() {
    let (h, rows) = sweep_rows(&["werner-qutrit", "--points", "5"]);
    assert_eq!(h, ["x", "concurrence_analytic", "concurrence"]);
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), [0.0, 0.25, 0.5, 0.75, 1.0]);
    for r in &rows {
        assert!((r[1] - r[2]).abs() < 1e-9);
    }
    let (_, rows) = sweep_rows(&["squeezed", "--points", "33"]);
    for r in &rows {
        assert!((r[1] - r[2]).abs() < 1e-9);
    }
    let (h, rows) = sweep_rows(&["ghz-type", "--from", "0.05", "--to", "0.95", "--points", "19"]);
    assert_eq!(h.len(), 6);
    for r in &rows {
        assert!((r[1] - r[2]).abs() < 1e-9);
        assert!(r[3..].iter().all(|&c| c == 0.0));
    }
    let (_, rows) = sweep_rows(&["werner-2q", "--points", "4"]);
    assert!(rows.windows(2).all(|w| w[0][0] < w[1][0]));
}

#[test]
fn sweep_json_format() {
    let out = dynsym(&["sweep", "werner-2q", "--points", "3", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert!(v[2]["concurrence"].as_f64().is_some());
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"dims": [3]}"#);
    assert_eq!(dynsym(&["analyze", s(&bad)]).status.code(), Some(2));
    let unnormalized = write(&dir, "u.json", r#"{"dims": [2], "amplitudes": [[1, 0], [1, 0]]}"#);
    assert_eq!(dynsym(&["analyze", s(&unnormalized)]).status.code(), Some(2));
    let zero = write(&dir, "zero.json", ZERO);
    let mismatch = dynsym(&["analyze", s(&zero), "--basis", "pauli-2"]);
    assert_eq!(mismatch.status.code(), Some(3));
    assert!(mismatch.stdout.is_empty());
    assert!(!mismatch.stderr.is_empty());
    assert_eq!(dynsym(&["tangle", s(&zero)]).status.code(), Some(3));
    assert_eq!(dynsym(&["maximize-variance", "--basis", "su3", "--restarts", "0"]).status.code(), Some(4));
    assert_eq!(dynsym(&["sweep", "werner-qutrit", "--from", "0.5", "--to", "0.1"]).status.code(), Some(2));
    assert_eq!(dynsym(&["generate", "werner-qutrit", "--x", "1.5"]).status.code(), Some(2));
    assert_eq!(dynsym(&["analyze", s(&zero), "--basis", "nope"]).status.code(), Some(2));
    assert_eq!(dynsym(&["pentagram", s(&zero), "--regular", "--axis", "1,0"]).status.code(), Some(2));
    assert_eq!(dynsym(&["pentagram", s(&zero), "--regular", "--axis", "0,0,0"]).status.code(), Some(2));
    assert_eq!(dynsym(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(dynsym(&["analyze", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn analyze_csv_output() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "zero.json", ZERO);
    let out = dynsym(&["analyze", s(&f), "--format", "csv"]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(reader.headers().unwrap(), vec!["observable", "expectation", "variance"]);
    assert_eq!(reader.records().count(), 3);
}
