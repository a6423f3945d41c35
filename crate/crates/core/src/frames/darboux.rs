use serde::Serialize;

use super::{classify_case, CaseTag};
use crate::curve::CurveSamples;
use crate::deriv::grid_derivative;
use crate::error::{Error, Result};
use crate::lorentz::{mcross, mnorm, LVec3};

/// Below this a curvature is treated as zero when fixing the normal's orientation.
const ORIENTATION_FLOOR: f64 = 1e-8;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DarbouxSample {
    pub s: f64,
    pub t: LVec3,
    pub b: LVec3,
    pub n: LVec3,
    pub kappa_g: f64,
    pub kappa_n: f64,
    pub tau_g: f64,
}

/// Darboux apparatus of a sampled surface curve.
///
/// Unoriented normals are first made continuous along the curve, then
/// flipped as a whole so that κ_n > 0 at the first sample (κ_g > 0 if κ_n
/// vanishes there). Normals that arrive oriented are used as given.
pub fn darboux_apparatus(curve: &CurveSamples, eps: f64) -> Result<(CaseTag, Vec<DarbouxSample>)> {
    let case = classify_case(curve, eps)?;
    let normals = curve.normal.as_ref().ok_or(Error::MissingNormal)?;
    let mut sign = vec![1.0; curve.len()];
    if !normals.oriented {
        for k in 1..curve.len() {
            let prev = normals.n[k - 1] * sign[k - 1];
            let e = normals.n[k];
            let dot = prev.x1 * e.x1 + prev.x2 * e.x2 + prev.x3 * e.x3;
            sign[k] = if dot < 0.0 { -1.0 } else { 1.0 };
        }
    }
    let mut out: Vec<DarbouxSample> = (0..curve.len())
        .map(|k| {
            let t = curve.d1[k];
            let raw = normals.n[k] * sign[k];
            let n = raw / mnorm(raw);
            let dn = normals.dn[k] * sign[k];
            let b = mcross(n, t);
            let (kappa_g, kappa_n, tau_g) = case.extract(curve.d2[k], dn, b, n);
            DarbouxSample { s: curve.s[k], t, b, n, kappa_g, kappa_n, tau_g }
        })
        .collect();
    if !normals.oriented {
        let first = out[0];
        let flip = if first.kappa_n.abs() > ORIENTATION_FLOOR {
            first.kappa_n < 0.0
        } else {
            first.kappa_g < -ORIENTATION_FLOOR
        };
        if flip {
            // N → −N sends B → −B, κ_g → −κ_g, κ_n → −κ_n and keeps τ_g
            for d in &mut out {
                d.n = -d.n;
                d.b = -d.b;
                d.kappa_g = -d.kappa_g;
                d.kappa_n = -d.kappa_n;
            }
        }
    }
    Ok((case, out))
}

/// Largest Euclidean defect between grid derivatives of (T, B, N) and the
/// case's Darboux right-hand side, ignoring `trim` samples at each end.
pub fn darboux_ode_residual(case: CaseTag, samples: &[DarbouxSample], trim: usize) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::Validation("need at least two samples".into()));
    }
    let h = (samples[samples.len() - 1].s - samples[0].s) / (samples.len() - 1) as f64;
    let col = |f: fn(&DarbouxSample) -> LVec3| samples.iter().map(f).collect::<Vec<_>>();
    let dt = grid_derivative(&col(|d| d.t), h)?;
    let db = grid_derivative(&col(|d| d.b), h)?;
    let dn = grid_derivative(&col(|d| d.n), h)?;
    let mut worst: f64 = 0.0;
    for k in trim..samples.len().saturating_sub(trim) {
        let d = &samples[k];
        let (rt, rb, rn) = case.darboux_rhs(d.kappa_g, d.kappa_n, d.tau_g, d.t, d.b, d.n);
        worst = worst.max(dt[k].euclid_dist(rt)).max(db[k].euclid_dist(rb)).max(dn[k].euclid_dist(rn));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{reparametrize_unit_speed, CurveForm, CurveSpec, NumericConfig, SurfaceSpec};
    use crate::expr::ScalarExpr;
    use crate::lorentz::mdot;

    fn e(t: &str) -> ScalarExpr {
        ScalarExpr::parse(t).unwrap()
    }

    fn on_surface(x: [&str; 3], u: &str, v: &str, window: (f64, f64)) -> CurveSamples {
        let surf = SurfaceSpec { x: x.map(e), declared: None };
        let c = CurveSpec { form: CurveForm::OnSurface { u: e(u), v: e(v) }, window, samples: 201 };
        reparametrize_unit_speed(&c, Some(&surf), &NumericConfig::default()).unwrap()
    }

    #[test]
    fn circle_on_lorentzian_cylinder() {
        let c = on_surface(["v", "cos(u)", "sin(u)"], "s", "0", (0.0, 6.0));
        let (case, ds) = darboux_apparatus(&c, 1e-9).unwrap();
        assert_eq!(case, CaseTag::ST);
        for d in &ds {
            assert!(d.kappa_g.abs() < 1e-6, "{}", d.kappa_g);
            assert!((d.kappa_n - 1.0).abs() < 1e-6, "{}", d.kappa_n);
            assert!(d.tau_g.abs() < 1e-6, "{}", d.tau_g);
            assert!(d.b.euclid_dist(LVec3::E1) < 1e-8 || d.b.euclid_dist(-LVec3::E1) < 1e-8);
        }
        assert!(darboux_ode_residual(case, &ds, 0).unwrap() < 1e-4);
    }

    #[test]
    fn plane_geodesic_is_flat() {
        // line in the spacelike plane x1 = 0
        let c = on_surface(["0", "u", "v"], "s", "0.5*s", (0.0, 1.0));
        let (case, ds) = darboux_apparatus(&c, 1e-9).unwrap();
        assert_eq!(case, CaseTag::SS);
        for d in &ds {
            assert!(d.kappa_g.abs() < 1e-8 && d.kappa_n.abs() < 1e-8 && d.tau_g.abs() < 1e-8);
        }
    }

    #[test]
    fn curve_on_hyperbolic_plane_is_ss() {
        // hyperboloid x1² − x2² − x3² = 1 has timelike normal
        let c = on_surface(["cosh(u)", "sinh(u)*cos(v)", "sinh(u)*sin(v)"], "1", "s", (0.0, 1.0));
        let (case, ds) = darboux_apparatus(&c, 1e-9).unwrap();
        assert_eq!(case, CaseTag::SS);
        for d in &ds {
            let g = [mdot(d.t, d.t), mdot(d.b, d.b), mdot(d.n, d.n)];
            for (gi, si) in g.iter().zip(case.signature()) {
                assert!((gi - si).abs() < 1e-8);
            }
            assert!(d.kappa_n > 0.0);
            assert!((d.kappa_n - 1.0).abs() < 1e-6, "umbilic: κ_n = 1, got {}", d.kappa_n);
            assert!(d.tau_g.abs() < 1e-6);
        }
        assert!(darboux_ode_residual(case, &ds, 0).unwrap() < 1e-4);
    }

    #[test]
    fn timelike_curve_on_cylinder_is_tt() {
        // helix (2s, cos s, sin s) has ⟨γ′,γ′⟩ = −3 on the cylinder
        let c = on_surface(["v", "cos(u)", "sin(u)"], "s", "2*s", (0.0, 3.0));
        let (case, ds) = darboux_apparatus(&c, 1e-9).unwrap();
        assert_eq!(case, CaseTag::TT);
        assert!(darboux_ode_residual(case, &ds, 0).unwrap() < 1e-4);
        for d in &ds {
            assert!((mcross(d.n, d.t) - d.b).euclid_norm() < 1e-12);
        }
    }
}
