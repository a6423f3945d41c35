//! Frenet and Darboux apparatuses along sampled curves.

mod darboux;
mod frenet;
mod phi;

use serde::{Deserialize, Serialize};

pub use darboux::{darboux_apparatus, darboux_ode_residual, DarbouxSample};
pub use frenet::{frenet_apparatus, FrenetSample, MIN_CURVATURE};
pub use phi::{check_phi_relations, kappa_relation_residuals, KappaRelation, PhiRelation};

use crate::curve::CurveSamples;
use crate::error::{Error, Result};
use crate::lorentz::{causal_character, CausalCharacter, LVec3};

/// Causal configuration of a curve on a surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// Spacelike curve on a spacelike surface (timelike normal).
    SS,
    /// Spacelike curve on a timelike surface.
    ST,
    /// Timelike curve on a timelike surface.
    TT,
}

/// Derivatives (T′, B′, N′) of a Darboux frame.
pub type FrameDerivative = (LVec3, LVec3, LVec3);

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::SS => "SS",
            CaseTag::ST => "ST",
            CaseTag::TT => "TT",
        }
    }

    /// (⟨T,T⟩, ⟨B,B⟩, ⟨N,N⟩).
    pub fn signature(self) -> [f64; 3] {
        match self {
            CaseTag::SS => [1.0, 1.0, -1.0],
            CaseTag::ST => [1.0, -1.0, 1.0],
            CaseTag::TT => [-1.0, 1.0, 1.0],
        }
    }

    pub fn tangent_character(self) -> CausalCharacter {
        match self {
            CaseTag::TT => CausalCharacter::Timelike,
            _ => CausalCharacter::Spacelike,
        }
    }

    pub fn normal_character(self) -> CausalCharacter {
        match self {
            CaseTag::SS => CausalCharacter::Timelike,
            _ => CausalCharacter::Spacelike,
        }
    }

    /// Case for a (tangent, normal) character pair, if one exists.
    pub fn from_characters(t: CausalCharacter, n: CausalCharacter) -> Option<CaseTag> {
        use CausalCharacter::*;
        match (t, n) {
            (Spacelike, Timelike) => Some(CaseTag::SS),
            (Spacelike, Spacelike) => Some(CaseTag::ST),
            (Timelike, Spacelike) => Some(CaseTag::TT),
            _ => None,
        }
    }

    /// Right-hand side of the case's Darboux system.
    pub fn darboux_rhs(self, kg: f64, kn: f64, tg: f64, t: LVec3, b: LVec3, n: LVec3) -> FrameDerivative {
        match self {
            CaseTag::SS => (b * kg + n * kn, t * -kg + n * tg, t * kn + b * tg),
            CaseTag::TT => (b * kg + n * kn, t * kg - n * tg, t * kn + b * tg),
            CaseTag::ST => (b * kg - n * kn, t * kg + n * tg, t * kn + b * tg),
        }
    }

    /// Recover (κ_g, κ_n, τ_g) from T′ and N′ by signed projections.
    pub fn extract(self, dt: LVec3, dn: LVec3, b: LVec3, n: LVec3) -> (f64, f64, f64) {
        use crate::lorentz::mdot;
        match self {
            CaseTag::SS => (mdot(dt, b), -mdot(dt, n), mdot(dn, b)),
            CaseTag::TT => (mdot(dt, b), mdot(dt, n), mdot(dn, b)),
            CaseTag::ST => (-mdot(dt, b), -mdot(dt, n), -mdot(dn, b)),
        }
    }

    /// Canonical initial frame (T, B, N) with B = N × T.
    pub fn canonical_frame(self) -> (LVec3, LVec3, LVec3) {
        match self {
            CaseTag::SS => (LVec3::E2, -LVec3::E3, LVec3::E1),
            CaseTag::ST => (LVec3::E2, -LVec3::E1, LVec3::E3),
            CaseTag::TT => (LVec3::E1, -LVec3::E2, LVec3::E3),
        }
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CaseTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "SS" => Ok(CaseTag::SS),
            "ST" => Ok(CaseTag::ST),
            "TT" => Ok(CaseTag::TT),
            other => Err(Error::Validation(format!("unknown case `{other}` (SS, ST or TT)"))),
        }
    }
}

/// Case of a sampled surface curve; the character must be the same at every
/// sample. Tangent and normal are unit vectors, so `eps` applies to ⟨v,v⟩ directly.
pub fn classify_case(curve: &CurveSamples, eps: f64) -> Result<CaseTag> {
    let normals = curve.normal.as_ref().ok_or(Error::MissingNormal)?;
    let mut found: Option<CaseTag> = None;
    for (k, (&t, &n)) in curve.d1.iter().zip(&normals.n).enumerate() {
        let s = curve.s[k];
        let ct = causal_character(t, eps);
        if ct == CausalCharacter::Lightlike {
            return Err(Error::LightlikeVelocity(s));
        }
        let cn = causal_character(n, eps);
        if cn == CausalCharacter::Lightlike {
            return Err(Error::LightlikeNormal(s));
        }
        let case = CaseTag::from_characters(ct, cn).ok_or(Error::MixedCausalCharacter(s))?;
        match found {
            None => found = Some(case),
            Some(c) if c != case => return Err(Error::MixedCausalCharacter(s)),
            _ => {}
        }
    }
    found.ok_or_else(|| Error::Validation("empty sample table".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{mcross, mdot};

    #[test]
    fn canonical_frames_respect_signature_and_orientation() {
        for case in [CaseTag::SS, CaseTag::ST, CaseTag::TT] {
            let (t, b, n) = case.canonical_frame();
            let sig = case.signature();
            assert_eq!([mdot(t, t), mdot(b, b), mdot(n, n)], sig);
            assert_eq!(mdot(t, b), 0.0);
            assert_eq!(mdot(t, n), 0.0);
            assert_eq!(mdot(b, n), 0.0);
            assert_eq!(mcross(n, t), b, "{case}");
        }
    }

    #[test]
    fn extract_inverts_rhs() {
        for case in [CaseTag::SS, CaseTag::ST, CaseTag::TT] {
            let (t, b, n) = case.canonical_frame();
            let (dt, _, dn) = case.darboux_rhs(0.7, -1.3, 2.1, t, b, n);
            let (kg, kn, tg) = case.extract(dt, dn, b, n);
            assert!((kg - 0.7).abs() < 1e-15 && (kn + 1.3).abs() < 1e-15 && (tg - 2.1).abs() < 1e-15);
        }
    }

    #[test]
    fn rhs_preserves_gram() {
        // d/ds ⟨X,Y⟩ = 0 for every pair of frame vectors
        for case in [CaseTag::SS, CaseTag::ST, CaseTag::TT] {
            let (t, b, n) = case.canonical_frame();
            let (dt, db, dn) = case.darboux_rhs(0.4, 0.9, -0.6, t, b, n);
            let pairs = [(t, dt), (b, db), (n, dn)];
            for (i, &(x, dx)) in pairs.iter().enumerate() {
                for &(y, dy) in &pairs[i..] {
                    assert!((mdot(dx, y) + mdot(x, dy)).abs() < 1e-15, "{case}");
                }
            }
        }
    }
}
