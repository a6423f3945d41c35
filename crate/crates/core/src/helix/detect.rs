use serde::Serialize;

use super::formula::{AngleForm, FormulaId};
use super::sigma::SigmaSeries;
use crate::error::{Error, Result};
use crate::lorentz::LorentzAngle;

/// Outcome of the constancy test over a set of characterization series.
#[derive(Clone, Debug, Serialize)]
pub struct Detection {
    pub verdict: bool,
    pub formula: Option<FormulaId>,
    pub constant: Option<f64>,
    pub rel_std: Option<f64>,
    /// Angle on the + branch.
    pub angle: Option<LorentzAngle>,
    /// Constant series rejected because |c| sits on 1.
    pub ambiguous: Vec<FormulaId>,
}

impl Detection {
    fn negative(ambiguous: Vec<FormulaId>) -> Self {
        Detection { verdict: false, formula: None, constant: None, rel_std: None, angle: None, ambiguous }
    }
}

/// Angle whose angle function equals `b·c`, if the form admits one.
pub fn recover_angle(formula: FormulaId, c: f64, branch: f64) -> Option<f64> {
    let v = branch * c;
    match formula.form() {
        AngleForm::Coth => (v > 1.0).then(|| (1.0 / v).atanh()),
        AngleForm::Tanh => (0.0..1.0).contains(&v).then(|| v.atanh()),
        AngleForm::Cot => Some(1.0f64.atan2(v)),
    }
}

/// Pick the constant series with the smallest relative spread whose
/// constant lies in its form's range. Coth and tanh forms need |c| away from
/// 1 by more than `tol`; the earlier formula of a case wins ties.
pub fn detect_rns_helix(series: &[SigmaSeries], tol: f64) -> Result<Detection> {
    if series.iter().all(|s| s.valid == 0) {
        return Err(Error::EmptyValidGrid);
    }
    let mut best: Option<(&SigmaSeries, f64, f64)> = None;
    let mut ambiguous = Vec::new();
    let mut ambiguous_c = None;
    for sig in series.iter().filter(|s| s.is_constant(tol)) {
        let c = sig.constant(tol).expect("constant series has a mean");
        let r = sig.effective_rel_std(tol).unwrap_or(0.0);
        let fits = match sig.formula.form() {
            AngleForm::Cot => true,
            form => {
                if (c.abs() - 1.0).abs() <= tol {
                    ambiguous.push(sig.formula);
                    ambiguous_c = Some(c);
                    continue;
                }
                match form {
                    AngleForm::Coth => c.abs() > 1.0,
                    _ => c.abs() < 1.0,
                }
            }
        };
        if fits && best.is_none_or(|(_, _, br)| r < br) {
            best = Some((sig, c, r));
        }
    }
    match best {
        Some((sig, c, r)) => {
            let branch = if c < 0.0 { -1.0 } else { 1.0 };
            let b = if sig.formula.form() == AngleForm::Cot { 1.0 } else { branch };
            let value = recover_angle(sig.formula, c, b).expect("range checked above");
            Ok(Detection {
                verdict: true,
                formula: Some(sig.formula),
                constant: Some(c),
                rel_std: Some(r),
                angle: Some(LorentzAngle { value, kind: sig.formula.angle_kind() }),
                ambiguous,
            })
        }
        None => match ambiguous_c {
            Some(c) => Err(Error::AmbiguousAngle(c)),
            None => Ok(Detection::negative(ambiguous)),
        },
    }
}
