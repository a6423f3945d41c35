use serde::{Deserialize, Serialize};

use super::detect::recover_angle;
use super::formula::{AngleForm, FormulaId};
use super::sigma::SigmaSeries;
use crate::deriv::masked_grid_derivative;
use crate::error::{Error, Result};
use crate::frames::DarbouxSample;
use crate::lorentz::{mdot, AngleKind, CausalCharacter, LVec3, LorentzAngle};

/// Axis candidate on one sign branch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchAxis {
    pub branch: i8,
    pub angle: f64,
    /// Mean of the per-sample axis.
    pub d: LVec3,
    /// max ‖d(s) − d̄‖ (Euclidean).
    pub constancy_residual: f64,
    pub max_d_prime: f64,
    pub b_dot_d_mean: f64,
    pub b_dot_d_spread: f64,
}

/// Fixed direction of a detected helix with its quality measures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisResult {
    pub formula: FormulaId,
    pub d: LVec3,
    pub d_character: CausalCharacter,
    pub angle: LorentzAngle,
    pub branch: i8,
    pub constancy_residual: f64,
    /// |⟨d̄,d̄⟩ ∓ 1|
    pub gram_residual: f64,
    pub max_d_prime: f64,
    pub b_dot_d_mean: f64,
    pub b_dot_d_spread: f64,
    /// ⟨B,d⟩ predicted by the angle function.
    pub b_dot_d_expected: f64,
    /// |f(angle) − b·c| / max(|c|, 1) for the angle function f.
    pub angle_consistency: f64,
    pub branches: Vec<BranchAxis>,
}

/// Axis d(s) = t·b·(τ_g/√R)·A·T + C·B − t·b·(κ_g/√R)·A·N at one sample.
pub fn axis_at(formula: FormulaId, d: &DarbouxSample, angle: f64, branch: f64) -> Result<LVec3> {
    let r = formula.radicand().eval(d.kappa_g, d.tau_g);
    if !(r > 0.0) {
        return Err(Error::RadicandViolation(d.s));
    }
    let root = r.sqrt();
    let (amp, c) = formula.amplitudes(angle);
    let k = formula.t_sign() * branch * amp / root;
    Ok(d.t * (k * d.tau_g) + d.b * c - d.n * (k * d.kappa_g))
}

fn branch_axis(formula: FormulaId, darboux: &[DarbouxSample], mask: &SigmaSeries, angle: f64, branch: f64) -> Result<BranchAxis> {
    let mut per: Vec<Option<LVec3>> = vec![None; darboux.len()];
    let mut sum = LVec3::ZERO;
    let mut n = 0usize;
    for (k, d) in darboux.iter().enumerate() {
        if mask.is_valid(k) {
            let v = axis_at(formula, d, angle, branch)?;
            per[k] = Some(v);
            sum += v;
            n += 1;
        }
    }
    if n == 0 {
        return Err(Error::EmptyValidGrid);
    }
    let mean = sum / n as f64;
    let mut constancy: f64 = 0.0;
    let (mut lo, mut hi, mut bsum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
    for (k, v) in per.iter().enumerate() {
        if let Some(v) = v {
            constancy = constancy.max(v.euclid_dist(mean));
            let bd = mdot(darboux[k].b, *v);
            lo = lo.min(bd);
            hi = hi.max(bd);
            bsum += bd;
        }
    }
    let h = (darboux[darboux.len() - 1].s - darboux[0].s) / (darboux.len() - 1) as f64;
    let max_d_prime =
        masked_grid_derivative(&per, h).iter().flatten().fold(0.0f64, |a, v| a.max(v.euclid_norm()));
    Ok(BranchAxis {
        branch: branch as i8,
        angle,
        d: mean,
        constancy_residual: constancy,
        max_d_prime,
        b_dot_d_mean: bsum / n as f64,
        b_dot_d_spread: hi - lo,
    })
}

/// Axis of a detected helix from its characterization series and constant.
/// Both sign branches are assembled; the one with the smaller constancy
/// residual is kept.
pub fn axis_rns(darboux: &[DarbouxSample], series: &SigmaSeries, c: f64) -> Result<AxisResult> {
    let formula = series.formula;
    let mut branches = Vec::new();
    for b in [1.0, -1.0] {
        if let Some(angle) = recover_angle(formula, c, b) {
            branches.push(branch_axis(formula, darboux, series, angle, b)?);
        }
    }
    if branches.is_empty() {
        return Err(Error::AmbiguousAngle(c));
    }
    let best = branches
        .iter()
        .min_by(|a, b| a.constancy_residual.total_cmp(&b.constancy_residual))
        .expect("non-empty")
        .clone();
    let character = formula.axis_character();
    let b_sig = formula.case().signature()[1];
    let (_, c_coef) = formula.amplitudes(best.angle);
    let f = formula.angle_function(best.angle);
    let target = best.branch as f64 * c;
    let angle_consistency = if formula.form() == AngleForm::Cot || c != 0.0 {
        (f - target).abs() / c.abs().max(1.0)
    } else {
        f.abs()
    };
    // Lorentzian angles are stored unsigned.
    let value = match formula.angle_kind() {
        AngleKind::CosSpacelikePlane => best.angle,
        _ => best.angle.abs(),
    };
    Ok(AxisResult {
        formula,
        d: best.d,
        d_character: character,
        angle: LorentzAngle { value, kind: formula.angle_kind() },
        branch: best.branch,
        constancy_residual: best.constancy_residual,
        gram_residual: (mdot(best.d, best.d) - character.sign()).abs(),
        max_d_prime: best.max_d_prime,
        b_dot_d_mean: best.b_dot_d_mean,
        b_dot_d_spread: best.b_dot_d_spread,
        b_dot_d_expected: c_coef * b_sig,
        angle_consistency,
        branches,
    })
}
