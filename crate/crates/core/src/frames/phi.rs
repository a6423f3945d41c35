use serde::{Deserialize, Serialize};

use super::{CaseTag, DarbouxSample, FrenetSample};
use crate::deriv::grid_derivative;
use crate::error::{Error, Result};
use crate::lorentz::{mdot, CausalCharacter};

/// Compatibility defects between the Frenet and Darboux apparatuses at one sample.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PhiRelation {
    pub s: f64,
    /// Oriented angle between N and n; |phi| is the Lorentzian angle.
    pub phi: f64,
    pub residual_kappa: f64,
    pub residual_tau_g: f64,
}

/// Signed angle from (⟨n,B⟩, ⟨n,N⟩); its magnitude is the Lorentzian angle
/// between N and n and its derivative is τ_g − τ.
fn signed_phi(case: CaseTag, nb: f64, nn: f64) -> f64 {
    match case {
        CaseTag::SS => nb.signum() * nn.asinh(),
        CaseTag::ST => nn.signum() * nb.asinh(),
        CaseTag::TT => (-nb).atan2(nn),
    }
}

/// φ between the surface normal and the principal normal, with the κ and
/// τ_g decompositions it implies. κ defects compare magnitudes; the sign of
/// φ is not fixed by the unsigned Lorentzian angle.
pub fn check_phi_relations(
    case: CaseTag,
    frenet: &[FrenetSample],
    darboux: &[DarbouxSample],
) -> Result<Vec<PhiRelation>> {
    if frenet.len() != darboux.len() || frenet.len() < 5 {
        return Err(Error::Validation("Frenet and Darboux tables must align (≥ 5 samples)".into()));
    }
    let mut phis = Vec::with_capacity(frenet.len());
    let mut kres = Vec::with_capacity(frenet.len());
    let mut prev: Option<f64> = None;
    for (f, d) in frenet.iter().zip(darboux) {
        if case != CaseTag::TT && f.epsilon < 0.0 && f.curve == CausalCharacter::Spacelike {
            return Err(Error::AngleUndefined(d.s));
        }
        let mut phi = signed_phi(case, mdot(f.n, d.b), mdot(f.n, d.n));
        if case == CaseTag::TT {
            if let Some(p) = prev {
                let turns = ((p - phi) / std::f64::consts::TAU).round();
                phi += turns * std::f64::consts::TAU;
            }
            prev = Some(phi);
        }
        // the case fixes the plane of N and n, so parallel normals are no special case
        let angle = signed_phi(case, mdot(f.n, d.b), mdot(f.n, d.n)).abs();
        let (kg, kn, k) = (d.kappa_g.abs(), d.kappa_n, f.kappa);
        let r = match case {
            CaseTag::SS => (kn.abs() - k * angle.sinh()).abs().max((kg - k * angle.cosh()).abs()),
            CaseTag::ST => (kn.abs() - k * angle.cosh()).abs().max((kg - k * angle.sinh()).abs()),
            CaseTag::TT => (kn - k * angle.cos()).abs().max((kg - k * angle.sin()).abs()),
        };
        phis.push(phi);
        kres.push(r);
    }
    let h = (darboux[darboux.len() - 1].s - darboux[0].s) / (darboux.len() - 1) as f64;
    let dphi = grid_derivative(&phis, h)?;
    Ok((0..phis.len())
        .map(|k| PhiRelation {
            s: darboux[k].s,
            phi: phis[k],
            residual_kappa: kres[k],
            residual_tau_g: darboux[k].tau_g - frenet[k].tau - dphi[k],
        })
        .collect())
}

/// Worst relative defect of three candidate κ² decompositions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KappaRelation {
    /// κ² = κ_n² + κ_g²
    pub sum: f64,
    /// κ² = κ_n² − κ_g²
    pub kn_minus_kg: f64,
    /// κ² = κ_g² − κ_n²
    pub kg_minus_kn: f64,
}

impl KappaRelation {
    /// Name of the relation that holds within `tol`, if exactly one does.
    pub fn selected(&self, tol: f64) -> Option<&'static str> {
        let cands = [
            ("kappa^2 = kappa_n^2 + kappa_g^2", self.sum),
            ("kappa^2 = kappa_n^2 - kappa_g^2", self.kn_minus_kg),
            ("kappa^2 = kappa_g^2 - kappa_n^2", self.kg_minus_kn),
        ];
        let holding: Vec<_> = cands.iter().filter(|c| c.1 < tol).collect();
        (holding.len() == 1).then(|| holding[0].0)
    }
}

pub fn kappa_relation_residuals(frenet: &[FrenetSample], darboux: &[DarbouxSample]) -> KappaRelation {
    let mut r = KappaRelation { sum: 0.0, kn_minus_kg: 0.0, kg_minus_kn: 0.0 };
    for (f, d) in frenet.iter().zip(darboux) {
        let k2 = f.kappa * f.kappa;
        let (g2, n2) = (d.kappa_g * d.kappa_g, d.kappa_n * d.kappa_n);
        r.sum = r.sum.max((k2 - (n2 + g2)).abs() / k2);
        r.kn_minus_kg = r.kn_minus_kg.max((k2 - (n2 - g2)).abs() / k2);
        r.kg_minus_kn = r.kg_minus_kn.max((k2 - (g2 - n2)).abs() / k2);
    }
    r
}
