use serde::Serialize;

use super::formula::FormulaId;
use crate::deriv::grid_derivative;
use crate::error::{Error, Result};
use crate::frames::{CaseTag, DarbouxSample, FrenetSample};
use crate::lorentz::CausalCharacter;

/// Samples with |κ_g| at or below this fraction of max|κ_g| are masked.
pub const KAPPA_G_FLOOR: f64 = 1e-8;
/// Samples whose radicand is at or below this fraction of κ_g² + τ_g² are masked.
pub const RADICAND_FLOOR: f64 = 1e-6;
/// Floor on |mean| in the relative standard deviation.
/// Series whose largest value is below this fraction of the tolerance are zero.
pub const ZERO_FRACTION: f64 = 0.1;
pub const MEAN_FLOOR: f64 = 1e-12;

/// One characterization function sampled along the curve.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaSeries {
    pub formula: FormulaId,
    pub s: Vec<f64>,
    /// `None` on masked samples.
    pub sigma: Vec<Option<f64>>,
    pub valid: usize,
    pub masked_fraction: f64,
    pub mean: Option<f64>,
    pub std: Option<f64>,
    pub rel_std: Option<f64>,
    pub max_abs: Option<f64>,
}

impl SigmaSeries {
    fn new(formula: FormulaId, s: Vec<f64>, sigma: Vec<Option<f64>>) -> Self {
        let vals: Vec<f64> = sigma.iter().flatten().copied().collect();
        let n = vals.len();
        let masked_fraction = if sigma.is_empty() { 1.0 } else { 1.0 - n as f64 / sigma.len() as f64 };
        let (mut mean, mut std, mut rel_std, mut max_abs) = (None, None, None, None);
        if n > 0 {
            let m = vals.iter().sum::<f64>() / n as f64;
            let sd = (vals.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / n as f64).sqrt();
            mean = Some(m);
            std = Some(sd);
            rel_std = Some(sd / m.abs().max(MEAN_FLOOR));
            max_abs = Some(vals.iter().fold(0.0f64, |a, v| a.max(v.abs())));
        }
        SigmaSeries { formula, s, sigma, valid: n, masked_fraction, mean, std, rel_std, max_abs }
    }

    /// Constant within `tol`: small relative spread, or identically zero at
    /// a level `ZERO_FRACTION · tol`. σ is dimensionless, so an absolute
    /// floor is meaningful.
    pub fn is_constant(&self, tol: f64) -> bool {
        self.is_zero(tol) || self.rel_std.is_some_and(|r| r < tol)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs.is_some_and(|m| m < tol * ZERO_FRACTION)
    }

    /// Spread used to rank candidates; zero for identically-zero series.
    pub fn effective_rel_std(&self, tol: f64) -> Option<f64> {
        if self.is_zero(tol) {
            Some(0.0)
        } else {
            self.rel_std
        }
    }

    /// The constant, with identically-zero series pinned to 0.
    pub fn constant(&self, tol: f64) -> Option<f64> {
        if self.is_zero(tol) {
            Some(0.0)
        } else {
            self.mean
        }
    }

    pub fn is_valid(&self, k: usize) -> bool {
        self.sigma[k].is_some()
    }
}

fn spacing(s: &[f64]) -> f64 {
    (s[s.len() - 1] - s[0]) / (s.len() - 1) as f64
}

/// Characterization functions of every formula of `case`.
///
/// The kernel is angle_sign · (κ_g²(τ_g/κ_g)′/R^{3/2} ± κ_n/R^{1/2}); the
/// first term is evaluated as (κ_g τ_g′ − τ_g κ_g′)/R^{3/2}, which stays
/// bounded where κ_g crosses zero.
pub fn sigma_rns(case: CaseTag, darboux: &[DarbouxSample]) -> Result<Vec<SigmaSeries>> {
    if darboux.len() < 5 {
        return Err(Error::Validation("need at least 5 samples".into()));
    }
    let s: Vec<f64> = darboux.iter().map(|d| d.s).collect();
    let kg: Vec<f64> = darboux.iter().map(|d| d.kappa_g).collect();
    let tg: Vec<f64> = darboux.iter().map(|d| d.tau_g).collect();
    let h = spacing(&s);
    let dkg = grid_derivative(&kg, h)?;
    let dtg = grid_derivative(&tg, h)?;
    let kg_scale = kg.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let kg_floor = KAPPA_G_FLOOR * kg_scale.max(1.0);
    if kg_scale <= kg_floor {
        return Err(Error::VanishingKappaG(s[0]));
    }
    let out: Vec<SigmaSeries> = FormulaId::for_case(case)
        .iter()
        .map(|&f| {
            let rad = f.radicand();
            let sigma = (0..s.len())
                .map(|k| {
                    let r = rad.eval(kg[k], tg[k]);
                    let q = kg[k] * kg[k] + tg[k] * tg[k];
                    if kg[k].abs() <= kg_floor || r <= RADICAND_FLOOR * q || r <= 0.0 {
                        return None;
                    }
                    let x = (kg[k] * dtg[k] - tg[k] * dkg[k]) / r.powf(1.5);
                    let kernel = x + f.kn_sign() * darboux[k].kappa_n / r.sqrt();
                    Some(f.angle_sign() * kernel)
                })
                .collect();
            SigmaSeries::new(f, s.clone(), sigma)
        })
        .collect();
    if out.iter().all(|x| x.valid == 0) {
        return Err(Error::EmptyValidGrid);
    }
    Ok(out)
}

/// Frenet data recast as a Darboux apparatus with κ_g = κ, κ_n = 0, τ_g = τ,
/// so that the normal-slant machinery applied to it tests the principal
/// normal n. Spacelike curves with spacelike n map to SS, with timelike n to
/// ST; timelike curves map to TT with the binormal negated.
pub fn frenet_as_darboux(frenet: &[FrenetSample]) -> Result<(CaseTag, Vec<DarbouxSample>)> {
    let first = frenet.first().ok_or_else(|| Error::Validation("empty Frenet table".into()))?;
    let case = match (first.curve, first.epsilon > 0.0) {
        (CausalCharacter::Timelike, _) => CaseTag::TT,
        (_, true) => CaseTag::SS,
        (_, false) => CaseTag::ST,
    };
    let mut out = Vec::with_capacity(frenet.len());
    for f in frenet {
        let same = match case {
            CaseTag::TT => f.curve == CausalCharacter::Timelike,
            CaseTag::SS => f.curve == CausalCharacter::Spacelike && f.epsilon > 0.0,
            CaseTag::ST => f.curve == CausalCharacter::Spacelike && f.epsilon < 0.0,
        };
        if !same {
            return Err(Error::MixedCausalCharacter(f.s));
        }
        let n = if case == CaseTag::TT { -f.b } else { f.b };
        out.push(DarbouxSample { s: f.s, t: f.t, b: f.n, n, kappa_g: f.kappa, kappa_n: 0.0, tau_g: f.tau });
    }
    Ok((case, out))
}

/// Slant-helix characterization series of the Frenet apparatus.
pub fn sigma_slant(frenet: &[FrenetSample]) -> Result<(CaseTag, Vec<DarbouxSample>, Vec<SigmaSeries>)> {
    let (case, pseudo) = frenet_as_darboux(frenet)?;
    let series = sigma_rns(case, &pseudo)?;
    Ok((case, pseudo, series))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::LVec3;

    fn profile(n: usize, f: impl Fn(f64) -> (f64, f64, f64)) -> Vec<DarbouxSample> {
        (0..n)
            .map(|i| {
                let s = -5.0 + 10.0 * i as f64 / (n - 1) as f64;
                let (kappa_g, kappa_n, tau_g) = f(s);
                DarbouxSample { s, t: LVec3::ZERO, b: LVec3::ZERO, n: LVec3::ZERO, kappa_g, kappa_n, tau_g }
            })
            .collect()
    }

    #[test]
    fn constant_ss_profile() {
        let d = profile(101, |_| (2.0, 0.5, 1.0));
        let series = sigma_rns(CaseTag::SS, &d).unwrap();
        let coth = &series[0];
        assert_eq!(coth.formula, FormulaId::SsCoth);
        assert!((coth.mean.unwrap() + 0.5 / 3f64.sqrt()).abs() < 1e-12);
        assert!(coth.rel_std.unwrap() < 1e-10);
        assert_eq!(series[2].valid, 0, "cot kernel needs τ_g² > κ_g²");
    }

    #[test]
    fn hyperbolic_family_constant() {
        let (c, m, k) = (1.0, 0.3, 0.2);
        let d = profile(1001, |s| (c * (m * s).cosh(), k, c * (m * s).sinh()));
        let series = sigma_rns(CaseTag::SS, &d).unwrap();
        let sig = &series[0];
        assert!((sig.mean.unwrap() - (m - k) / c).abs() < 1e-9);
        assert!(sig.rel_std.unwrap() < 1e-8);
    }

    #[test]
    fn trig_family_masks_kappa_g_zeros() {
        let (c, m, k) = (1.0, 0.5, 0.2);
        let d = profile(1001, |s| (c * (m * s).cos(), k, c * (m * s).sin()));
        let series = sigma_rns(CaseTag::ST, &d).unwrap();
        for sig in &series {
            assert!((sig.mean.unwrap().abs() - (m - k) / c).abs() < 1e-9);
        }
    }

    #[test]
    fn vanishing_kappa_g() {
        let d = profile(11, |_| (0.0, 1.0, 0.0));
        assert!(matches!(sigma_rns(CaseTag::ST, &d), Err(Error::VanishingKappaG(_))));
    }

    #[test]
    fn empty_grid() {
        // κ_g = τ_g makes every SS radicand vanish
        let d = profile(11, |_| (1.0, 1.0, 1.0));
        assert!(matches!(sigma_rns(CaseTag::SS, &d), Err(Error::EmptyValidGrid)));
    }
}
