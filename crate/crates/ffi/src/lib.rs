//! C ABI over the rnshelix library.
//!
//! Analyses live behind an opaque `RnsAnalysis` handle created by
//! `rns_analyze_json` and released with `rns_analysis_free`. Every fallible
//! call returns an `RnsStatus`; the message of the most recent failure on the
//! calling thread is available from `rns_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use rnshelix::document::Overrides;
use rnshelix::lorentz::{self, AngleKind, CausalCharacter, LVec3};
use rnshelix::pipeline::{run_document, write_artifacts, RunOptions, RunOutput};
use rnshelix::Error;

/// Result of an FFI call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RnsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input was rejected (malformed document, bad settings).
    Validation = 3,
    /// The computation failed (degenerate geometry, integration blow-up).
    Numerical = 4,
    /// Reading or writing files failed.
    Io = 5,
    /// The requested value does not exist for this analysis.
    NotAvailable = 6,
    /// An index was past the end.
    OutOfRange = 7,
    /// An internal panic was caught at the boundary.
    Panic = 8,
}

/// A vector (x1, x2, x3) of Minkowski 3-space.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RnsVec3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl From<RnsVec3> for LVec3 {
    fn from(v: RnsVec3) -> Self {
        LVec3::new(v.x1, v.x2, v.x3)
    }
}

impl From<LVec3> for RnsVec3 {
    fn from(v: LVec3) -> Self {
        RnsVec3 { x1: v.x1, x2: v.x2, x3: v.x3 }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RnsCausal {
    Spacelike = 0,
    Timelike = 1,
    Lightlike = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RnsAngleKind {
    CosSpacelikePlane = 0,
    CoshTimelikePlane = 1,
    SinhMixed = 2,
    CoshSameCone = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RnsAngle {
    pub value: f64,
    pub kind: RnsAngleKind,
}

/// One row of the sample table; NaN marks a value that does not exist.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RnsSample {
    pub s: f64,
    pub kappa_g: f64,
    pub kappa_n: f64,
    pub tau_g: f64,
    pub sigma: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

/// Opaque result of one analysis.
pub struct RnsAnalysis {
    run: RunOutput,
    report_json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn fail(status: RnsStatus, msg: impl Into<String>) -> RnsStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> RnsStatus {
    match e {
        Error::Io(_) => RnsStatus::Io,
        e if e.is_validation() => RnsStatus::Validation,
        _ => RnsStatus::Numerical,
    }
}

/// Run `f`, turning panics into `RnsStatus::Panic`.
fn guarded(f: impl FnOnce() -> RnsStatus) -> RnsStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(RnsStatus::Panic, "internal panic"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, RnsStatus> {
    if p.is_null() {
        return Err(fail(RnsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| fail(RnsStatus::InvalidUtf8, format!("{what}: {e}")))
}

/// Message of the most recent failure on this thread, or "" if none.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn rns_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Analyze a JSON document (curve or profile). `tol` is the constancy
/// tolerance; pass 0 or a negative value for the default. On success
/// `*out` receives a handle to release with `rns_analysis_free`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rns_analyze_json(json: *const c_char, tol: f64, out: *mut *mut RnsAnalysis) -> RnsStatus {
    guarded(|| {
        if out.is_null() {
            return fail(RnsStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let text = match str_arg(json, "json") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let mut opts = RunOptions::default();
        if tol > 0.0 {
            opts.tol = tol;
        }
        let run = match run_document(text, &Overrides::default(), &opts) {
            Ok(r) => r,
            Err(e) => return fail(status_of(&e), format!("{}: {e}", e.kind())),
        };
        let report_json = match run.report.to_json().map(CString::new) {
            Ok(Ok(s)) => s,
            _ => return fail(RnsStatus::Io, "report serialization failed"),
        };
        *out = Box::into_raw(Box::new(RnsAnalysis { run, report_json }));
        RnsStatus::Ok
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `a` must come from `rns_analyze_json` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rns_analysis_free(a: *mut RnsAnalysis) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

unsafe fn handle<'a>(a: *const RnsAnalysis) -> Result<&'a RnsAnalysis, RnsStatus> {
    a.as_ref().ok_or_else(|| fail(RnsStatus::NullPointer, "analysis handle is null"))
}

/// The full report as JSON, owned by the handle.
///
/// # Safety
/// `a` must be a live handle or null (which yields null).
#[no_mangle]
pub unsafe extern "C" fn rns_analysis_report_json(a: *const RnsAnalysis) -> *const c_char {
    match handle(a) {
        Ok(h) => h.report_json.as_ptr(),
        Err(_) => ptr::null(),
    }
}

/// Whether the curve is a relatively normal-slant helix.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rns_analysis_rns_verdict(a: *const RnsAnalysis, out: *mut bool) -> RnsStatus {
    match (handle(a), out.is_null()) {
        (Err(s), _) => s,
        (_, true) => fail(RnsStatus::NullPointer, "out is null"),
        (Ok(h), false) => {
            *out = h.run.report.rns_verdict;
            RnsStatus::Ok
        }
    }
}

/// Whether the curve is a slant helix.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rns_analysis_slant_verdict(a: *const RnsAnalysis, out: *mut bool) -> RnsStatus {
    match (handle(a), out.is_null()) {
        (Err(s), _) => s,
        (_, true) => fail(RnsStatus::NullPointer, "out is null"),
        (Ok(h), false) => {
            *out = h.run.report.slant_verdict;
            RnsStatus::Ok
        }
    }
}

/// The characterization constant; `NotAvailable` when there is no helix.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rns_analysis_rns_constant(a: *const RnsAnalysis, out: *mut f64) -> RnsStatus {
    match (handle(a), out.is_null()) {
        (Err(s), _) => s,
        (_, true) => fail(RnsStatus::NullPointer, "out is null"),
        (Ok(h), false) => match h.run.report.rns_constant {
            Some(c) => {
                *out = c;
                RnsStatus::Ok
            }
            None => fail(RnsStatus::NotAvailable, "no relatively normal-slant helix detected"),
        },
    }
}

/// Number of rows in the sample table (0 for a null handle).
///
/// # Safety
/// `a` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn rns_analysis_sample_count(a: *const RnsAnalysis) -> usize {
    handle(a).map_or(0, |h| h.run.rows.len())
}

/// Row `index` of the sample table.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rns_analysis_sample(a: *const RnsAnalysis, index: usize, out: *mut RnsSample) -> RnsStatus {
    let h = match handle(a) {
        Ok(h) => h,
        Err(s) => return s,
    };
    if out.is_null() {
        return fail(RnsStatus::NullPointer, "out is null");
    }
    let Some(r) = h.run.rows.get(index) else {
        return fail(RnsStatus::OutOfRange, format!("row {index} of {}", h.run.rows.len()));
    };
    let v = |x: Option<f64>| x.unwrap_or(f64::NAN);
    *out = RnsSample {
        s: r.s,
        kappa_g: v(r.kappa_g),
        kappa_n: v(r.kappa_n),
        tau_g: v(r.tau_g),
        sigma: v(r.sigma),
        d1: v(r.d1),
        d2: v(r.d2),
        d3: v(r.d3),
    };
    RnsStatus::Ok
}

/// Write report.json and samples.csv into directory `dir`.
///
/// # Safety
/// `a` must be a live handle and `dir` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn rns_analysis_write(a: *const RnsAnalysis, dir: *const c_char) -> RnsStatus {
    guarded(|| {
        let h = match handle(a) {
            Ok(h) => h,
            Err(s) => return s,
        };
        let dir = match str_arg(dir, "dir") {
            Ok(d) => d,
            Err(s) => return s,
        };
        match write_artifacts(Path::new(dir), &h.run) {
            Ok(()) => RnsStatus::Ok,
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Minkowski inner product −x1y1 + x2y2 + x3y3.
#[no_mangle]
pub extern "C" fn rns_mdot(x: RnsVec3, y: RnsVec3) -> f64 {
    lorentz::mdot(x.into(), y.into())
}

/// Minkowski cross product.
#[no_mangle]
pub extern "C" fn rns_mcross(x: RnsVec3, y: RnsVec3) -> RnsVec3 {
    lorentz::mcross(x.into(), y.into()).into()
}

/// Causal character of `v` with null-cone tolerance `eps`.
#[no_mangle]
pub extern "C" fn rns_causal_character(v: RnsVec3, eps: f64) -> RnsCausal {
    match lorentz::causal_character(v.into(), eps) {
        CausalCharacter::Spacelike => RnsCausal::Spacelike,
        CausalCharacter::Timelike => RnsCausal::Timelike,
        CausalCharacter::Lightlike => RnsCausal::Lightlike,
    }
}

/// Lorentzian angle between two non-null vectors.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rns_lorentz_angle(v: RnsVec3, w: RnsVec3, eps: f64, out: *mut RnsAngle) -> RnsStatus {
    if out.is_null() {
        return fail(RnsStatus::NullPointer, "out is null");
    }
    match lorentz::lorentz_angle(v.into(), w.into(), eps) {
        Ok(a) => {
            let kind = match a.kind {
                AngleKind::CosSpacelikePlane => RnsAngleKind::CosSpacelikePlane,
                AngleKind::CoshTimelikePlane => RnsAngleKind::CoshTimelikePlane,
                AngleKind::SinhMixed => RnsAngleKind::SinhMixed,
                AngleKind::CoshSameCone => RnsAngleKind::CoshSameCone,
            };
            *out = RnsAngle { value: a.value, kind };
            RnsStatus::Ok
        }
        Err(e) => fail(status_of(&e), format!("{}: {e}", e.kind())),
    }
}
