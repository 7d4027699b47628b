use std::path::Path;
use std::process::{Command, Output};

fn gzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gzeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn zeta_level_one_json() {
    let o = gzeta(&["zeta", "--n", "2", "--level", "1", "--epsilon", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let js: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(js["epsilon"], 1);
    assert_eq!(js["terms"].as_array().unwrap().len(), 4);
}

#[test]
fn zeta_level_two_unitary_has_all_types() {
    let o = gzeta(&["zeta", "--n", "4", "--level", "2", "--epsilon", "-1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let js: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(js["label"], "GU(4,2)");
    assert!(js["terms"].as_array().unwrap().len() > 22);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(gzeta(&["zeta", "--n", "5"]).status.code(), Some(2));
    assert_eq!(gzeta(&["zeta", "--n", "2", "--level", "3"]).status.code(), Some(2));
    assert_eq!(gzeta(&["zeta", "--n", "2", "--epsilon", "2"]).status.code(), Some(2));
    assert_eq!(gzeta(&["census", "--n", "4", "--q", "3"]).status.code(), Some(2));
    assert_eq!(gzeta(&["census", "--n", "2", "--q", "6"]).status.code(), Some(2));
    assert_eq!(gzeta(&["sym", "--n", "4", "--level", "1"]).status.code(), Some(2));
    assert_eq!(gzeta(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn types_table_has_22_rows() {
    let o = gzeta(&["types", "--n", "4", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    // header, rule, 22 rows
    assert_eq!(stdout(&o).lines().count(), 24);
}

#[test]
fn census_csv() {
    let o = gzeta(&["census", "--n", "3", "--q", "2", "--variant", "gu", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("type,classes"));
    let total: u64 = lines.map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 14);
}

#[test]
fn special_value_matches_closed_form() {
    let o = gzeta(&["special", "--n", "4", "--level", "2", "--epsilon", "-1", "--s", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let js: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let want = gzeta_core::RatPoly::parse("q^2(q^2-q+1)(q^14+q^7-2q^6-q^5+2q^4-q^3+2q^2+q-2)(q+1)^2").unwrap();
    assert_eq!(js["value"], want.to_string());
}

#[test]
fn sym_at_level_two() {
    let o = gzeta(&["sym", "--n", "4", "--level", "2", "--epsilon", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("q^20 - q^19 - q^17 + q^16"));
}

#[test]
fn oracle_suite_passes() {
    let o = gzeta(&["check", "--suite", "oracle", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let js: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(js["passed"], true);
}

#[test]
fn symbolic_suite_reports_overrides_and_mismatches() {
    let o = gzeta(&["check", "--suite", "symbolic", "--format", "json"]);
    let js: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = js["checks"].as_array().unwrap();
    let with = |outcome: &str, group: &str| {
        checks
            .iter()
            .filter(|c| c["outcome"] == outcome && c["group"] == group)
            .count()
    };
    // two documented misprints per sign, plus the two field-table rows
    assert_eq!(with("notice", "fixtures"), 4);
    assert_eq!(with("notice", "field-table"), 2);
    // exit status follows the failures, whatever they are
    let failed = checks.iter().any(|c| c["outcome"] == "fail");
    assert_eq!(o.status.code(), Some(if failed { 1 } else { 0 }));
    assert_eq!(with("fail", "cormain"), 0);
    assert_eq!(with("fail", "duality"), 0);
    assert_eq!(with("fail", "structural"), 0);
}

fn run_to(dir: &Path, name: &str) -> (String, serde_json::Value) {
    let path = dir.join(name);
    let o = gzeta(&[
        "census",
        "--n",
        "3",
        "--q",
        "3",
        "--variant",
        "gl",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let payload = std::fs::read_to_string(&path).unwrap();
    let meta = std::fs::read_to_string(dir.join(format!("{name}.meta.json"))).unwrap();
    (payload, serde_json::from_str(&meta).unwrap())
}

#[test]
fn output_is_deterministic_with_timing_in_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let (a, meta) = run_to(dir.path(), "a.json");
    let (b, _) = run_to(dir.path(), "b.json");
    assert_eq!(a, b);
    assert!(!a.contains("elapsed_ms"));
    assert!(meta["elapsed_ms"].is_u64());
    assert_eq!(meta["command"], "census");
}

#[test]
fn thread_cap_does_not_change_results() {
    let plain = gzeta(&["census", "--n", "3", "--q", "2"]);
    let capped = Command::new(env!("CARGO_BIN_EXE_gzeta"))
        .args(["census", "--n", "3", "--q", "2"])
        .env("ZETA_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(plain.stdout, capped.stdout);
}
