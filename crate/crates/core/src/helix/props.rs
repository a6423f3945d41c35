use serde::Serialize;

use super::axis::AxisResult;
use super::formula::FormulaId;
use super::special::SpecialFlags;
use crate::frames::{CaseTag, DarbouxSample, FrenetSample};
use crate::lorentz::{mdot, CausalCharacter, LVec3};

/// Axes from the two detectors must agree (up to sign) within this distance.
pub const AXIS_AGREEMENT_TOL: f64 = 1e-4;

#[derive(Clone, Debug, Serialize)]
pub struct PropositionResult {
    pub name: &'static str,
    pub applicable: bool,
    /// Meaningful only when applicable; vacuously true otherwise.
    pub passed: bool,
    pub detail: String,
}

impl PropositionResult {
    fn skip(name: &'static str, why: &str) -> Self {
        PropositionResult { name, applicable: false, passed: true, detail: why.to_string() }
    }

    fn run(name: &'static str, passed: bool, detail: String) -> Self {
        PropositionResult { name, applicable: true, passed, detail }
    }
}

/// Everything the checks look at.
pub struct PropositionInput<'a> {
    pub case: CaseTag,
    pub flags: SpecialFlags,
    pub darboux: &'a [DarbouxSample],
    pub frenet: Option<&'a [FrenetSample]>,
    pub rns_axis: Option<&'a AxisResult>,
    pub slant_verdict: bool,
    pub slant_axis: Option<&'a AxisResult>,
    pub tol: f64,
}

/// Distance between two directions, ignoring sign.
pub fn axis_distance(a: LVec3, b: LVec3) -> f64 {
    a.euclid_dist(b).min(a.euclid_dist(-b))
}

fn max_abs_against(darboux: &[DarbouxSample], d: LVec3, pick: fn(&DarbouxSample) -> LVec3) -> f64 {
    darboux.iter().fold(0.0f64, |a, x| a.max(mdot(pick(x), d).abs()))
}

/// Principal normal spacelike at every sample (always so for timelike curves).
fn normal_spacelike(frenet: Option<&[FrenetSample]>) -> Option<bool> {
    frenet.map(|f| f.iter().all(|x| x.curve == CausalCharacter::Timelike || x.epsilon > 0.0))
}

fn asymptotic_is_slant(p: &PropositionInput) -> PropositionResult {
    const NAME: &str = "asymptotic_rns_is_slant";
    if p.case == CaseTag::ST {
        return PropositionResult::skip(NAME, "stated for SS and TT only");
    }
    let Some(rns) = p.rns_axis else {
        return PropositionResult::skip(NAME, "no RNS helix");
    };
    if p.frenet.is_none() {
        return PropositionResult::skip(NAME, "no Frenet apparatus");
    }
    match (p.flags.asymptotic, p.slant_verdict, p.slant_axis) {
        (true, true, Some(sl)) => {
            let gap = axis_distance(rns.d, sl.d);
            PropositionResult::run(NAME, gap < AXIS_AGREEMENT_TOL, format!("axis gap {gap:.3e}"))
        }
        (true, _, _) => PropositionResult::run(NAME, false, "slant-helix detector did not fire".into()),
        (false, true, Some(sl)) => {
            let gap = axis_distance(rns.d, sl.d);
            PropositionResult::skip(
                NAME,
                &format!("not asymptotic; curve is nevertheless a slant helix (axis gap {gap:.3e}), so the converse fails here"),
            )
        }
        (false, _, _) => PropositionResult::skip(NAME, "not asymptotic"),
    }
}

fn line_of_curvature_axis(p: &PropositionInput) -> PropositionResult {
    const NAME: &str = "line_of_curvature_axis_character";
    let Some(rns) = p.rns_axis else {
        return PropositionResult::skip(NAME, "no RNS helix");
    };
    if !p.flags.line_of_curvature {
        return PropositionResult::skip(NAME, "not a line of curvature");
    }
    match normal_spacelike(p.frenet) {
        None => return PropositionResult::skip(NAME, "no Frenet apparatus"),
        Some(false) => return PropositionResult::skip(NAME, "principal normal not spacelike"),
        Some(true) => {}
    }
    let curve = p.case.tangent_character();
    PropositionResult::run(
        NAME,
        rns.d_character != curve,
        format!("{} axis on a {} line of curvature", rns.d_character.as_str(), curve.as_str()),
    )
}

fn timelike_axis_planar(p: &PropositionInput) -> PropositionResult {
    const NAME: &str = "timelike_axis_line_of_curvature_is_planar";
    let Some(rns) = p.rns_axis else {
        return PropositionResult::skip(NAME, "no RNS helix");
    };
    if rns.d_character != CausalCharacter::Timelike || !p.flags.line_of_curvature {
        return PropositionResult::skip(NAME, "needs a timelike axis on a line of curvature");
    }
    let Some(frenet) = p.frenet else {
        return PropositionResult::skip(NAME, "no Frenet apparatus");
    };
    let tau = frenet.iter().fold(0.0f64, |a, f| a.max(f.tau.abs()));
    PropositionResult::run(NAME, tau < p.tol, format!("max |tau| = {tau:.3e}"))
}

fn corollaries(p: &PropositionInput) -> Vec<PropositionResult> {
    const ST: &str = "st_tanh_axis_not_orthogonal_to_tangent";
    const SS: &str = "ss_tanh_axis_not_orthogonal_to_normal";
    const TT: &str = "tt_tanh_axis_tangent_and_geodesic";
    let formula = p.rns_axis.map(|a| a.formula);
    let mut out = Vec::new();
    for (name, target) in [(ST, FormulaId::StTanh), (SS, FormulaId::SsTanh), (TT, FormulaId::TtTanh)] {
        if formula != Some(target) {
            out.push(PropositionResult::skip(name, &format!("detected formula is not {target}")));
            continue;
        }
        let d = p.rns_axis.expect("formula implies axis").d;
        let td = max_abs_against(p.darboux, d, |x| x.t);
        let nd = max_abs_against(p.darboux, d, |x| x.n);
        out.push(match target {
            FormulaId::StTanh => PropositionResult::run(name, td > p.tol, format!("max |<T,d>| = {td:.3e}")),
            FormulaId::SsTanh => PropositionResult::run(name, nd > p.tol, format!("max |<N,d>| = {nd:.3e}")),
            _ => {
                let orth = nd < p.tol;
                PropositionResult::run(
                    name,
                    td > p.tol && orth == p.flags.geodesic,
                    format!("max |<T,d>| = {td:.3e}, max |<N,d>| = {nd:.3e}, geodesic = {}", p.flags.geodesic),
                )
            }
        });
    }
    out
}

/// Run every proposition check; failures are recorded, not raised.
pub fn check_propositions(p: &PropositionInput) -> Vec<PropositionResult> {
    let mut out = vec![asymptotic_is_slant(p), line_of_curvature_axis(p), timelike_axis_planar(p)];
    out.extend(corollaries(p));
    out
}
