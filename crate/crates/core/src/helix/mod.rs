//! Relatively normal-slant and slant helix detection, axes and proposition checks.

mod axis;
mod detect;
mod formula;
mod props;
mod sigma;
mod special;

pub use axis::{axis_at, axis_rns, AxisResult, BranchAxis};
pub use detect::{detect_rns_helix, recover_angle, Detection};
pub use formula::{AngleForm, FormulaId, Radicand};
pub use props::{axis_distance, check_propositions, PropositionInput, PropositionResult, AXIS_AGREEMENT_TOL};
pub use sigma::{frenet_as_darboux, sigma_rns, sigma_slant, SigmaSeries, KAPPA_G_FLOOR, MEAN_FLOOR, RADICAND_FLOOR, ZERO_FRACTION};
pub use special::{classify_special, SpecialFlags, DEFAULT_SPECIAL_TOL};

use crate::error::{Error, Result};
use crate::frames::{CaseTag, DarbouxSample, FrenetSample};

/// Default relative-spread threshold for "constant".
pub const DEFAULT_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug)]
pub struct HelixConfig {
    pub tol: f64,
    pub special_tol: f64,
}

impl Default for HelixConfig {
    fn default() -> Self {
        HelixConfig { tol: DEFAULT_TOL, special_tol: DEFAULT_SPECIAL_TOL }
    }
}

/// Detector output for one family of characterization functions.
#[derive(Clone, Debug)]
pub struct DetectorResult {
    pub case: CaseTag,
    pub series: Vec<SigmaSeries>,
    pub detection: Detection,
    pub axis: Option<AxisResult>,
    /// Why the detector could not run or could not conclude.
    pub note: Option<String>,
}

impl DetectorResult {
    pub fn verdict(&self) -> bool {
        self.detection.verdict && self.axis.is_some()
    }

    /// Series the verdict rests on, if any.
    pub fn selected(&self) -> Option<&SigmaSeries> {
        let f = self.detection.formula?;
        self.series.iter().find(|s| s.formula == f)
    }

    fn failed(case: CaseTag, e: &Error) -> Self {
        DetectorResult {
            case,
            series: Vec::new(),
            detection: Detection {
                verdict: false,
                formula: None,
                constant: None,
                rel_std: None,
                angle: None,
                ambiguous: Vec::new(),
            },
            axis: None,
            note: Some(e.to_string()),
        }
    }
}

/// Run series, detection and axis on a Darboux-type table. Conditions under
/// which no helix can be certified (κ_g ≡ 0, no valid samples, |c| = 1) are
/// returned as a negative result with a note; other errors propagate.
pub fn run_detector(case: CaseTag, darboux: &[DarbouxSample], tol: f64) -> Result<DetectorResult> {
    let series = match sigma_rns(case, darboux) {
        Ok(s) => s,
        Err(e @ (Error::VanishingKappaG(_) | Error::EmptyValidGrid)) => return Ok(DetectorResult::failed(case, &e)),
        Err(e) => return Err(e),
    };
    let detection = match detect_rns_helix(&series, tol) {
        Ok(d) => d,
        Err(e @ Error::AmbiguousAngle(_)) => {
            let mut r = DetectorResult::failed(case, &e);
            r.series = series;
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    let mut axis = None;
    if let (Some(f), Some(c)) = (detection.formula, detection.constant) {
        let sel = series.iter().find(|s| s.formula == f).expect("detected formula has a series");
        axis = Some(axis_rns(darboux, sel, c)?);
    }
    Ok(DetectorResult { case, series, detection, axis, note: None })
}

/// Full helix analysis of a surface curve.
#[derive(Clone, Debug)]
pub struct HelixAnalysis {
    pub case: CaseTag,
    pub flags: SpecialFlags,
    pub rns: DetectorResult,
    /// Slant-helix detector on the Frenet apparatus, when available.
    pub slant: Option<DetectorResult>,
    pub propositions: Vec<PropositionResult>,
}

/// Slant-helix detector on a Frenet table.
pub fn run_slant(frenet: &[FrenetSample], tol: f64) -> Result<DetectorResult> {
    let (case, pseudo) = frenet_as_darboux(frenet)?;
    run_detector(case, &pseudo, tol)
}

pub fn analyze_helix(
    case: CaseTag,
    darboux: &[DarbouxSample],
    frenet: Option<&[FrenetSample]>,
    cfg: &HelixConfig,
) -> Result<HelixAnalysis> {
    let flags = classify_special(darboux, cfg.special_tol);
    let rns = run_detector(case, darboux, cfg.tol)?;
    // The slant test is secondary: a principal normal that changes character
    // only disables it.
    let slant = frenet.map(|f| {
        run_slant(f, cfg.tol).unwrap_or_else(|e| DetectorResult::failed(case, &e))
    });
    let propositions = check_propositions(&PropositionInput {
        case,
        flags,
        darboux,
        frenet,
        rns_axis: rns.axis.as_ref().filter(|_| rns.detection.verdict),
        slant_verdict: slant.as_ref().is_some_and(|s| s.verdict()),
        slant_axis: slant.as_ref().and_then(|s| s.axis.as_ref()),
        tol: cfg.special_tol,
    });
    Ok(HelixAnalysis { case, flags, rns, slant, propositions })
}
