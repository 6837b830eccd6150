use std::path::Path;
use std::process::{Command, Output};

fn cotangent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cotangent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn export(dir: &Path, name: &str) -> std::path::PathBuf {
    let path = dir.join(format!("{name}.json"));
    let out = cotangent(&["catalog", "export", name, path_str(&path)]);
    assert!(out.status.success());
    path
}

#[test]
fn list_includes_core_entries() {
    let out = cotangent(&["catalog", "list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["sl2", "heisenberg3", "so3+ab1"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn export_unknown_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = cotangent(&["catalog", "export", "nope", path_str(&dir.path().join("x.json"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_exported_sl2() {
    let dir = tempfile::tempdir().unwrap();
    let file = export(dir.path(), "sl2");
    let report = dir.path().join("report.json");
    let out = cotangent(&["analyze", path_str(&file), "--check", "all", "--report", path_str(&report)]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["cohomology"]["h1_dd"], 1);
    assert_eq!(json["verdicts"]["theorem_a"]["status"], "pass");
}

#[test]
fn stable_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let file = export(dir.path(), "heisenberg3");
    let reports: Vec<String> = (0..2)
        .map(|i| {
            let report = dir.path().join(format!("r{i}.json"));
            let out = cotangent(&["analyze", path_str(&file), "--stable", "--report", path_str(&report)]);
            assert!(out.status.success());
            std::fs::read_to_string(report).unwrap()
        })
        .collect();
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn completes_missing_antisymmetric_partner() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.json");
    std::fs::write(
        &file,
        r#"{"dim": 3, "basis": ["x", "y", "z"], "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1"}}]}"#,
    )
    .unwrap();
    let out = cotangent(&["analyze", path_str(&file)]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn jacobi_failure_exits_3_with_triple() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(
        &file,
        r#"{"dim": 3, "basis": ["a", "b", "c"], "brackets": [
            {"i": 1, "j": 2, "coeffs": {"1": "1"}},
            {"i": 1, "j": 3, "coeffs": {"2": "1"}},
            {"i": 2, "j": 3, "coeffs": {"1": "1"}}]}"#,
    )
    .unwrap();
    let out = cotangent(&["analyze", path_str(&file)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("(a, b, c)"));
}

#[test]
fn syntax_error_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.json");
    std::fs::write(&file, "{\n  \"dim\": 2,\n  \"basis\": [\"a\" \"b\"]\n}").unwrap();
    let out = cotangent(&["analyze", path_str(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 3, column 17"));
}

#[test]
fn non_invariant_metric_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("heis.json");
    std::fs::write(
        &file,
        r#"{"dim": 3, "basis": ["x", "y", "z"],
            "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1"}}],
            "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}"#,
    )
    .unwrap();
    let out = cotangent(&["analyze", path_str(&file)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn no_oracle_skips_theorem_a() {
    let dir = tempfile::tempdir().unwrap();
    let file = export(dir.path(), "so3+ab1");
    let report = dir.path().join("r.json");
    let out = cotangent(&["analyze", path_str(&file), "--no-oracle", "--check", "A", "--check", "C", "--report", path_str(&report)]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["verdicts"]["theorem_a"]["status"], "skipped");
    assert_eq!(json["verdicts"]["theorem_b"]["reason"], "not requested");
    assert_eq!(json["cohomology"]["structural_sum"], 5);
    assert!(json["spaces"]["der_d"].is_null());
}
