use serde::{Deserialize, Serialize};

use crate::frames::CaseTag;
use crate::lorentz::{AngleKind, CausalCharacter};

/// One characterization function per (case, axis type).
///
/// Coth and tanh variants of a case share a kernel and differ only in the
/// range of the constant (|c| > 1 against |c| < 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    SsCoth,
    SsTanh,
    SsCot,
    StCoth,
    StTanh,
    TtCoth,
    TtCot,
    TtTanh,
}

/// Which combination of κ_g² and τ_g² sits under the roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Radicand {
    /// κ_g² − τ_g²
    KgMinusTg,
    /// τ_g² − κ_g²
    TgMinusKg,
    /// κ_g² + τ_g²
    Sum,
}

impl Radicand {
    pub fn eval(self, kg: f64, tg: f64) -> f64 {
        match self {
            Radicand::KgMinusTg => kg * kg - tg * tg,
            Radicand::TgMinusKg => tg * tg - kg * kg,
            Radicand::Sum => kg * kg + tg * tg,
        }
    }
}

/// Function of the angle that the characterization constant equals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleForm {
    Coth,
    Tanh,
    Cot,
}

impl FormulaId {
    pub const ALL: [FormulaId; 8] = [
        FormulaId::SsCoth,
        FormulaId::SsTanh,
        FormulaId::SsCot,
        FormulaId::StCoth,
        FormulaId::StTanh,
        FormulaId::TtCoth,
        FormulaId::TtCot,
        FormulaId::TtTanh,
    ];

    /// Formulas of a case, coth forms first.
    pub fn for_case(case: CaseTag) -> &'static [FormulaId] {
        match case {
            CaseTag::SS => &[FormulaId::SsCoth, FormulaId::SsTanh, FormulaId::SsCot],
            CaseTag::ST => &[FormulaId::StCoth, FormulaId::StTanh],
            CaseTag::TT => &[FormulaId::TtCoth, FormulaId::TtCot, FormulaId::TtTanh],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FormulaId::SsCoth => "ss_coth",
            FormulaId::SsTanh => "ss_tanh",
            FormulaId::SsCot => "ss_cot",
            FormulaId::StCoth => "st_coth",
            FormulaId::StTanh => "st_tanh",
            FormulaId::TtCoth => "tt_coth",
            FormulaId::TtCot => "tt_cot",
            FormulaId::TtTanh => "tt_tanh",
        }
    }

    pub fn case(self) -> CaseTag {
        use FormulaId::*;
        match self {
            SsCoth | SsTanh | SsCot => CaseTag::SS,
            StCoth | StTanh => CaseTag::ST,
            TtCoth | TtCot | TtTanh => CaseTag::TT,
        }
    }

    pub fn form(self) -> AngleForm {
        use FormulaId::*;
        match self {
            SsCoth | StCoth | TtCoth => AngleForm::Coth,
            SsTanh | StTanh | TtTanh => AngleForm::Tanh,
            SsCot | TtCot => AngleForm::Cot,
        }
    }

    pub fn radicand(self) -> Radicand {
        use FormulaId::*;
        match self {
            SsCoth | SsTanh | TtCot => Radicand::KgMinusTg,
            SsCot | TtCoth | TtTanh => Radicand::TgMinusKg,
            StCoth | StTanh => Radicand::Sum,
        }
    }

    /// Sign in front of κ_n/√R in the kernel.
    pub fn kn_sign(self) -> f64 {
        match self.radicand() {
            Radicand::TgMinusKg => 1.0,
            _ => -1.0,
        }
    }

    /// σ = angle_sign · kernel equals the angle function on the + branch.
    pub fn angle_sign(self) -> f64 {
        use FormulaId::*;
        match self {
            SsCoth | SsTanh | StCoth | TtCot => 1.0,
            SsCot | StTanh | TtCoth | TtTanh => -1.0,
        }
    }

    pub fn axis_character(self) -> CausalCharacter {
        use FormulaId::*;
        match self {
            SsTanh | StCoth | TtTanh => CausalCharacter::Timelike,
            _ => CausalCharacter::Spacelike,
        }
    }

    /// Lorentzian-angle kind between B and the axis.
    pub fn angle_kind(self) -> AngleKind {
        use FormulaId::*;
        match self {
            SsTanh | StTanh | TtTanh => AngleKind::SinhMixed,
            SsCoth | TtCoth => AngleKind::CoshTimelikePlane,
            StCoth => AngleKind::CoshSameCone,
            SsCot | TtCot => AngleKind::CosSpacelikePlane,
        }
    }

    /// Sign of the T coefficient relative to the N coefficient in the axis.
    pub fn t_sign(self) -> f64 {
        if self.case() == CaseTag::SS {
            1.0
        } else {
            -1.0
        }
    }

    /// (amplitude of the T/N part, B coefficient) at angle `a`.
    pub fn amplitudes(self, a: f64) -> (f64, f64) {
        match (self, self.form()) {
            (FormulaId::StTanh, _) => (a.cosh(), -a.sinh()),
            (_, AngleForm::Coth) => (a.sinh(), a.cosh()),
            (_, AngleForm::Tanh) => (a.cosh(), a.sinh()),
            (_, AngleForm::Cot) => (a.sin(), a.cos()),
        }
    }

    /// Value of the angle function (coth, tanh or cot) at `a`.
    pub fn angle_function(self, a: f64) -> f64 {
        match self.form() {
            AngleForm::Coth => 1.0 / a.tanh(),
            AngleForm::Tanh => a.tanh(),
            AngleForm::Cot => a.cos() / a.sin(),
        }
    }
}

impl std::fmt::Display for FormulaId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
