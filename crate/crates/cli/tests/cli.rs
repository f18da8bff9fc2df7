use std::path::PathBuf;
use std::process::{Command, Output};

use qalg_core::VerificationReport;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.qalg"))
}

fn qalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qalg")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn domdim_of_cyc3() {
    let o = qalg(&["domdim", fixture("cyc3").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Exact(3)");
}

#[test]
fn domdim_zero_fixture() {
    let o = qalg(&["domdim", fixture("domdim0").to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "Exact(0)");
}

#[test]
fn domdim_from_family() {
    let o = qalg(&["domdim", "--family", "schur:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Exact(4)");
}

#[test]
fn lin4_bounds_pass() {
    let o = qalg(&["verify", fixture("lin4").to_str().unwrap(), "--statements", "bounds"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn short_relation_is_an_input_error() {
    let o = qalg(&["domdim", fixture("bad_short_relation").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("length 1"));
}

#[test]
fn missing_file_and_unknown_statement_are_input_errors() {
    assert_eq!(qalg(&["info", "/nonexistent.qalg"]).status.code(), Some(2));
    let o = qalg(&["verify", "--family", "a2", "--statements", "no-such-id"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(qalg(&["info", "--family", "nope"]).status.code(), Some(2));
}

#[test]
fn exactly_one_input_source() {
    let path = fixture("a2");
    assert_ne!(qalg(&["info", path.to_str().unwrap(), "--family", "a2"]).status.code(), Some(0));
    assert_ne!(qalg(&["info"]).status.code(), Some(0));
}

#[test]
fn report_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = qalg(&[
        "verify",
        fixture("schur2").to_str().unwrap(),
        "--statements",
        "main,hochschild-translate,mueller-gendo",
        "--json",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let report: VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.algebra.name, "schur2");
    assert_eq!(report.entries.len(), 3);
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
    let top: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).collect();
    assert!(top[0].contains("\"algebra\"") && top[1].contains("\"entries\""));
}

#[test]
fn hochschild_both_routes_agree() {
    let o = qalg(&["hochschild", fixture("schur2").to_str().unwrap(), "--via", "both", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("HH^1 = 1 (translate 1)"), "{s}");
    assert!(!s.contains("MISMATCH"));
}

#[test]
fn translate_route_needs_dominant_dimension_two() {
    let o = qalg(&["hochschild", fixture("lin4").to_str().unwrap(), "--via", "translate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn field_override() {
    let o = qalg(&["info", "--family", "cyc3", "--field", "prime:5", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["field"], "prime 5");
    assert_eq!(v["dim"], 7);
}

#[test]
fn random_batch_is_deterministic_and_clean() {
    let run = |jobs: &str| {
        let o = qalg(&["random", "--seed", "7", "--count", "12", "--statements", "random", "--json", "--jobs", jobs]);
        assert_eq!(o.status.code(), Some(0));
        let mut reports: Vec<VerificationReport> = serde_json::from_slice(&o.stdout).unwrap();
        for r in &mut reports {
            for e in &mut r.entries {
                e.ms = 0;
            }
        }
        reports
    };
    assert_eq!(run("1"), run("4"));
}
