//! The C ABI exercised from Rust, plus a C program built against the header.

use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use rnshelix_ffi::*;

const F2: &str = r#"{"profile": {"case": "SS", "kappa_g": "cosh(0.5*s)", "kappa_n": "0.2", "tau_g": "sinh(0.5*s)"},
                    "window": [-5, 5], "samples": 501}"#;

fn analyze(doc: &str) -> (RnsStatus, *mut RnsAnalysis) {
    let text = CString::new(doc).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { rns_analyze_json(text.as_ptr(), 0.0, &mut out) };
    (status, out)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(rns_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn analysis_handle_exposes_results() {
    let (status, a) = analyze(F2);
    assert_eq!(status, RnsStatus::Ok);
    unsafe {
        let mut verdict = false;
        assert_eq!(rns_analysis_rns_verdict(a, &mut verdict), RnsStatus::Ok);
        assert!(verdict);
        let mut c = 0.0;
        assert_eq!(rns_analysis_rns_constant(a, &mut c), RnsStatus::Ok);
        assert!((c - 0.3).abs() < 1e-6);

        let n = rns_analysis_sample_count(a);
        assert!(n > 0);
        let mut row = std::mem::zeroed::<RnsSample>();
        assert_eq!(rns_analysis_sample(a, 0, &mut row), RnsStatus::Ok);
        assert!((row.sigma - c).abs() < 1e-4 && row.d1.is_finite());
        assert_eq!(rns_analysis_sample(a, n, &mut row), RnsStatus::OutOfRange);

        let json = CStr::from_ptr(rns_analysis_report_json(a)).to_str().unwrap();
        let report = rnshelix::report::HelixReport::from_json(json).unwrap();
        assert_eq!(report.samples_csv.rows, n);

        let dir = tempfile::tempdir().unwrap();
        let path = CString::new(dir.path().to_str().unwrap()).unwrap();
        assert_eq!(rns_analysis_write(a, path.as_ptr()), RnsStatus::Ok);
        assert!(dir.path().join("report.json").exists() && dir.path().join("samples.csv").exists());
        rns_analysis_free(a);
    }
}

#[test]
fn missing_values_are_reported() {
    let doc = r#"{"surface": {"x1": "v", "x2": "cos(u)", "x3": "sin(u)"}, "curve": {"u": "s", "v": "0"},
                  "window": [0, 6], "samples": 201}"#;
    let (status, a) = analyze(doc);
    assert_eq!(status, RnsStatus::Ok);
    unsafe {
        let mut c = 0.0;
        assert_eq!(rns_analysis_rns_constant(a, &mut c), RnsStatus::NotAvailable);
        let mut row = std::mem::zeroed::<RnsSample>();
        assert_eq!(rns_analysis_sample(a, 0, &mut row), RnsStatus::Ok);
        assert!(row.d1.is_nan());
        rns_analysis_free(a);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let (status, a) = analyze(r#"{"curve": {"x1": "0", "x2": "cos(s", "x3": "0"}, "window": [0, 1]}"#);
    assert_eq!(status, RnsStatus::Validation);
    assert!(a.is_null());
    assert!(last_error().contains("SyntaxError"), "{}", last_error());

    let (status, _) = analyze(r#"{"curve": {"x1": "s", "x2": "s", "x3": "0"}, "window": [0, 1]}"#);
    assert_eq!(status, RnsStatus::Numerical);

    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(rns_analyze_json(ptr::null(), 0.0, &mut out), RnsStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(rns_analyze_json(bad.as_ptr().cast(), 0.0, &mut out), RnsStatus::InvalidUtf8);
        let mut flag = false;
        assert_eq!(rns_analysis_slant_verdict(ptr::null(), &mut flag), RnsStatus::NullPointer);
        assert!(rns_analysis_report_json(ptr::null()).is_null());
        assert_eq!(rns_analysis_sample_count(ptr::null()), 0);
        rns_analysis_free(ptr::null_mut());
    }
}

#[test]
fn lorentz_primitives() {
    let e1 = RnsVec3 { x1: 1.0, x2: 0.0, x3: 0.0 };
    let e2 = RnsVec3 { x1: 0.0, x2: 1.0, x3: 0.0 };
    let e3 = RnsVec3 { x1: 0.0, x2: 0.0, x3: 1.0 };
    assert_eq!(rns_mdot(e1, e1), -1.0);
    assert_eq!(rns_mcross(e1, e2), RnsVec3 { x1: 0.0, x2: 0.0, x3: -1.0 });
    assert_eq!(rns_mcross(e2, e3), e1);
    assert_eq!(rns_causal_character(e1, 1e-9), RnsCausal::Timelike);
    assert_eq!(rns_causal_character(e2, 1e-9), RnsCausal::Spacelike);
    assert_eq!(rns_causal_character(RnsVec3 { x1: 1.0, x2: 1.0, x3: 0.0 }, 1e-9), RnsCausal::Lightlike);

    let mut angle = RnsAngle { value: -1.0, kind: RnsAngleKind::CosSpacelikePlane };
    let w = RnsVec3 { x1: 0.0, x2: 1.0, x3: 1.0 };
    assert_eq!(unsafe { rns_lorentz_angle(e2, w, 1e-9, &mut angle) }, RnsStatus::Ok);
    assert_eq!(angle.kind, RnsAngleKind::CosSpacelikePlane);
    assert!((angle.value - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    let null = RnsVec3 { x1: 1.0, x2: 1.0, x3: 0.0 };
    assert_eq!(unsafe { rns_lorentz_angle(null, e2, 1e-9, &mut angle) }, RnsStatus::Numerical);
}

#[test]
fn c_program_links_against_the_header() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler available, skipping");
        return;
    }
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // Integration tests run from <target>/<profile>/deps.
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("librnshelix_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let tmp = tempfile::tempdir().unwrap();
    let exe = tmp.path().join("smoke");
    let build = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(build.status.success(), "{}", String::from_utf8_lossy(&build.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}: {}", run.status.code(), String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
