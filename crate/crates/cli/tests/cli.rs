use std::io::Write;
use std::process::{Command, Output};

use ropelength_cli::{AnalysisReport, ConstantsReport, OracleCheckReport, NONTRIVIAL_THRESHOLD};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ropelength"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn knot_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(contents.as_bytes()).expect("write");
    f
}

fn analyze_json(args: &[&str]) -> (AnalysisReport, String) {
    let mut full = vec!["analyze"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--format", "json"]);
    let out = bin(&full);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).expect("utf-8");
    (serde_json::from_str(&text).expect("valid report"), text)
}

#[test]
fn square_expected_nontrivial_exits_3() {
    let f = knot_file("0 0 0\n1 0 0\n1 1 0\n0 1 0\n");
    let out = bin(&["analyze", f.path().to_str().unwrap(), "--expect-nontrivial"]);
    assert_eq!(out.status.code(), Some(3));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("ropelength: 4.000000"), "{stdout}");
}

#[test]
fn square_without_expectation_succeeds() {
    let f = knot_file("# square\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n0 0 0\n");
    let (report, _) = analyze_json(&[f.path().to_str().unwrap()]);
    assert!((report.thickness.ropelength - 4.0).abs() < 1e-12);
    assert!((report.thickness.min_rad - 0.5).abs() < 1e-12);
    assert_eq!(report.thickness.dcsd, Some(1.0));
    assert!((report.thickness.thickness - 1.0).abs() < 1e-12);
    assert!(report.quadrisecants.is_empty());
    assert_eq!(report.diagnostics.warnings.len(), 1);
}

#[test]
fn parse_error_exits_1_with_line_number() {
    let f = knot_file("0 0 0\n1 0 zero\n1 1 0\n");
    let out = bin(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn missing_file_exits_1() {
    let out = bin(&["analyze", "/nonexistent/knot.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn geometry_error_exits_2() {
    // anti-parallel edges at the middle vertex
    let f = knot_file("0 0 0\n1 0 0\n0.5 0 0\n0 1 0\n");
    let out = bin(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    assert_eq!(bin(&["analyze"]).status.code(), Some(1));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
    assert_eq!(bin(&["--version"]).status.code(), Some(0));
    assert_eq!(bin(&["fixture", "nope"]).status.code(), Some(1));
}

#[test]
fn trefoil_with_essential_assumption() {
    let (report, _) = analyze_json(&["--fixture", "trefoil", "--assume-essential", "--expect-nontrivial"]);
    assert!(report.thickness.ropelength > NONTRIVIAL_THRESHOLD);
    let alt = report
        .certificates
        .iter()
        .filter(|c| c.valid && c.order_type == ropelength::OrderType::Alternating)
        .filter(|c| c.kind == ropelength_cli::analyze::CertificateKind::Essential)
        .count();
    assert!(alt >= 1);
    let best = report.summary.best_conditional.expect("conditional bound");
    assert!(best.bound >= 15.66);
    assert!(best.bound <= report.thickness.ropelength + 1e-9);
    assert!(report.arc_checks.iter().all(|a| a.tier1_passed));
}

#[test]
fn convex_polygon_has_no_quadrisecants() {
    let (report, _) = analyze_json(&["--fixture", "convex-20gon"]);
    assert!(report.quadrisecants.is_empty());
    assert!(report.certificates.is_empty());
    assert!(report.summary.best_unconditional.is_none());
}

#[test]
fn json_report_round_trips() {
    let (report, text) = analyze_json(&["--fixture", "trefoil", "--assume-essential", "--normalize"]);
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(again.trim_end(), text.trim_end());
    let reparsed: AnalysisReport = serde_json::from_str(&again).unwrap();
    assert_eq!(reparsed, report);
    assert_eq!(report.normalization.vertices.as_ref().map(Vec::len), Some(64));
}

#[test]
fn normalized_output_has_unit_thickness() {
    let (report, _) = analyze_json(&["--fixture", "figure-eight", "--normalize"]);
    let text: String = report
        .normalization
        .vertices
        .unwrap()
        .iter()
        .map(|v| format!("{:?} {:?} {:?}\n", v[0], v[1], v[2]))
        .collect();
    let knot = ropelength_cli::parse_knot_text(&text).unwrap().knot;
    let t = ropelength::thickness_and_ropelength(&knot).unwrap();
    assert!((t.thickness - 1.0).abs() < 1e-9);
    assert!((t.ropelength - report.thickness.ropelength).abs() < 1e-9);
}

#[test]
fn fixture_output_parses_back() {
    let out = bin(&["fixture", "trefoil"]);
    assert!(out.status.success());
    let parsed = ropelength_cli::parse_knot_text(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(parsed.knot, ropelength::fixtures::trefoil(64));
}

#[test]
fn constants_all_pass() {
    let out = bin(&["constants", "--format", "json"]);
    assert!(out.status.success());
    let report: ConstantsReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.passed);
    assert!(report.rows.len() >= 15);
    assert!(report.rows.iter().all(|r| r.passed));
}

#[test]
fn oracle_check_is_deterministic_and_passes() {
    let args = ["oracle-check", "--grid", "4", "--seed", "42", "--quadruples", "40", "--format", "json"];
    let a = bin(&args);
    let b = bin(&args);
    assert!(a.status.success(), "stderr: {}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let report: OracleCheckReport = serde_json::from_slice(&a.stdout).unwrap();
    assert!(report.passed);
    assert_eq!(report.seed, 42);
    assert_eq!(report.m_grid.points, 5 * 5 * 5);
}
