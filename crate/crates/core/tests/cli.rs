//! Behaviour of the `rnshelix` binary: exit codes, artifacts and overrides.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rnshelix::report::{read_csv, HelixReport, CSV_HEADER};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rnshelix")).args(args).output().unwrap()
}

fn run_doc(mode: &str, input: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![mode, input.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn write_doc(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn report(out: &Path) -> HelixReport {
    HelixReport::from_json(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

#[test]
fn synthesize_writes_consistent_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let o = run_doc("synthesize", &data("f2_hyperbolic_ss.json"), &out, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let text = fs::read_to_string(out.join("report.json")).unwrap();
    let r = HelixReport::from_json(&text).unwrap();
    assert_eq!(r.to_json().unwrap(), text);
    assert!(r.rns_verdict);
    assert!((r.rns_constant.unwrap() - 0.3).abs() < 1e-6);

    let csv = fs::read_to_string(out.join("samples.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
    let rows = read_csv(&out.join("samples.csv")).unwrap();
    assert_eq!(rows.len(), r.samples_csv.rows);
    assert!(rows.iter().all(|row| row.sigma.is_some() && row.d1.is_some() && row.d2.is_some() && row.d3.is_some()));
    let c = r.rns_constant.unwrap();
    assert!(rows.iter().all(|row| (row.sigma.unwrap() - c).abs() < 1e-4));
}

#[test]
fn no_helix_leaves_axis_columns_empty() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let o = run_doc("analyze", &data("circle_on_cylinder.json"), &out, &[]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&out);
    assert!(!r.rns_verdict && r.axis.is_none());
    let rows = read_csv(&out.join("samples.csv")).unwrap();
    assert_eq!(rows.len(), r.samples_csv.rows);
    assert!(rows.iter().all(|row| row.d1.is_none() && row.kappa_n.is_some()));
}

#[test]
fn malformed_expression_exits_2_and_removes_stale_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    fs::create_dir_all(&out).unwrap();
    fs::write(out.join("report.json"), "stale").unwrap();
    fs::write(out.join("samples.csv"), "stale").unwrap();
    let o = run_doc("analyze", &data("malformed.json"), &out, &[]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("SyntaxError") && err.contains("byte 5") && err.contains("surface.x2"), "{err}");
    assert!(!out.join("report.json").exists() && !out.join("samples.csv").exists());
}

#[test]
fn validation_failures_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let cases = [
        ("unknown field", r#"{"curve": {"x1": "0", "x2": "s", "x3": "0"}, "window": [0, 1], "bogus": 1}"#, "analyze"),
        ("empty window", r#"{"curve": {"x1": "0", "x2": "s", "x3": "0"}, "window": [1, 1]}"#, "analyze"),
        ("unknown identifier", r#"{"curve": {"x1": "0", "x2": "w", "x3": "0"}, "window": [0, 1]}"#, "analyze"),
        ("mode mismatch", r#"{"profile": {"case": "SS", "kappa_g": "1", "kappa_n": "0", "tau_g": "0"}, "window": [0, 1]}"#, "analyze"),
        ("not json", "{", "synthesize"),
        (
            "declared type contradicts the normal",
            r#"{"surface": {"x1": "v", "x2": "cos(u)", "x3": "sin(u)", "type": "spacelike"},
                "curve": {"u": "s", "v": "0"}, "window": [0, 1]}"#,
            "analyze",
        ),
    ];
    for (what, text, mode) in cases {
        let doc = write_doc(tmp.path(), "doc.json", text);
        let o = run_doc(mode, &doc, &out, &[]);
        assert_eq!(o.status.code(), Some(2), "{what}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = run_doc("analyze", &tmp.path().join("missing.json"), &out, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn numerical_failure_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let doc = write_doc(tmp.path(), "null.json", r#"{"curve": {"x1": "s", "x2": "s", "x3": "0"}, "window": [0, 1]}"#);
    let o = run_doc("analyze", &doc, &out, &[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("LightlikeVelocity"));
    assert!(!out.join("report.json").exists());
}

#[test]
fn check_props_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let o = run_doc("check-props", &data("f2_hyperbolic_ss.json"), &out, &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(report(&out).proposition_results.iter().any(|p| p.applicable && p.passed));

    // A strongly boosting asymptotic profile: Frenet torsion from the sampled
    // curve is too noisy for the slant detector, so the check fails.
    let doc = write_doc(
        tmp.path(),
        "tt.json",
        r#"{"profile": {"case": "TT", "kappa_g": "cosh(0.5*s)", "kappa_n": "0", "tau_g": "sinh(0.5*s)"},
            "window": [-3, 3], "samples": 1001}"#,
    );
    let o = run_doc("check-props", &doc, &out, &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("asymptotic_rns_is_slant FAILED"));
    assert!(out.join("report.json").exists(), "failed propositions keep the artifacts");
    let o = run_doc("synthesize", &doc, &out, &[]);
    assert_eq!(o.status.code(), Some(0), "only check-props turns failures into an exit code");
}

#[test]
fn free_curve_reports_without_case() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let doc = write_doc(
        tmp.path(),
        "helix.json",
        r#"{"curve": {"x1": "0.5*s", "x2": "cos(s)", "x3": "sin(s)"}, "window": [0, 6], "samples": 201}"#,
    );
    let o = run_doc("analyze", &doc, &out, &[]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&out);
    assert!(r.case.is_none() && r.special_flags.is_none() && !r.rns_verdict);
    assert!(r.slant.is_some());
    let rows = read_csv(&out.join("samples.csv")).unwrap();
    assert_eq!(rows.len(), 201);
    assert!(rows.iter().all(|row| row.kappa_g.is_none() && row.sigma.is_none()));
}

#[test]
fn command_line_overrides_document_settings() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let o = run_doc(
        "analyze",
        &data("circle_on_cylinder.json"),
        &out,
        &["--samples", "201", "--h", "2e-4", "--eps", "1e-10", "--tol", "1e-4"],
    );
    assert_eq!(o.status.code(), Some(0));
    let c = report(&out).config;
    assert_eq!((c.samples, c.h, c.eps, c.tol), (201, 2e-4, 1e-10, 1e-4));
    assert_eq!(c.input["samples"], 1001);

    let o = run_doc("analyze", &data("circle_on_cylinder.json"), &out, &[]);
    assert_eq!(o.status.code(), Some(0));
    let c = report(&out).config;
    assert_eq!((c.samples, c.h, c.eps, c.tol), (1001, 1e-4, 1e-9, 1e-3));
}
