use serde::Serialize;

use crate::curve::CurveSamples;
use crate::error::{Error, Result};
use crate::lorentz::{causal_character, causal_character_scaled, mcross, mdot, mnorm, CausalCharacter, LVec3};

/// γ″ shorter than this (Euclidean) counts as vanishing curvature.
pub const MIN_CURVATURE: f64 = 1e-7;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FrenetSample {
    pub s: f64,
    pub t: LVec3,
    pub n: LVec3,
    pub b: LVec3,
    pub kappa: f64,
    pub tau: f64,
    /// ⟨n,n⟩; always +1 for timelike curves.
    pub epsilon: f64,
    pub curve: CausalCharacter,
}

/// Frenet frame with b = n × T and τ = ⟨n′, b⟩/⟨b, b⟩.
pub fn frenet_apparatus(curve: &CurveSamples, eps: f64) -> Result<Vec<FrenetSample>> {
    let mut out = Vec::with_capacity(curve.len());
    let mut character = None;
    for k in 0..curve.len() {
        let s = curve.s[k];
        let (t, dd, ddd) = (curve.d1[k], curve.d2[k], curve.d3[k]);
        let ct = causal_character(t, eps);
        if ct == CausalCharacter::Lightlike {
            return Err(Error::LightlikeVelocity(s));
        }
        match character {
            None => character = Some(ct),
            Some(c) if c != ct => return Err(Error::MixedCausalCharacter(s)),
            _ => {}
        }
        if dd.euclid_norm() < MIN_CURVATURE {
            return Err(Error::VanishingCurvature(s));
        }
        let cn = causal_character_scaled(dd, eps);
        if cn == CausalCharacter::Lightlike {
            return Err(Error::LightlikePrincipalNormal(s));
        }
        let kappa = mnorm(dd);
        let n = dd / kappa;
        let b = mcross(n, t);
        let tau = mdot(ddd, b) / (kappa * mdot(b, b));
        out.push(FrenetSample { s, t, n, b, kappa, tau, epsilon: cn.sign(), curve: ct });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{reparametrize_unit_speed, CurveForm, CurveSpec, NumericConfig};
    use crate::expr::ScalarExpr;

    fn sample(x: [&str; 3], window: (f64, f64)) -> CurveSamples {
        let c = CurveSpec {
            form: CurveForm::Free { x: x.map(|e| ScalarExpr::parse(e).unwrap()) },
            window,
            samples: 101,
        };
        reparametrize_unit_speed(&c, None, &NumericConfig::default()).unwrap()
    }

    fn check_gram(f: &FrenetSample) {
        let sig = match f.curve {
            CausalCharacter::Timelike => [-1.0, 1.0, 1.0],
            _ => [1.0, f.epsilon, -f.epsilon],
        };
        let (t, n, b) = (f.t, f.n, f.b);
        let g = [mdot(t, t), mdot(n, n), mdot(b, b)];
        for i in 0..3 {
            assert!((g[i] - sig[i]).abs() < 1e-8, "{g:?} vs {sig:?}");
        }
        for (x, y) in [(t, n), (t, b), (n, b)] {
            assert!(mdot(x, y).abs() < 1e-8);
        }
    }

    #[test]
    fn circle() {
        let fr = frenet_apparatus(&sample(["0", "cos(s)", "sin(s)"], (0.0, 3.0)), 1e-9).unwrap();
        for f in &fr {
            assert!((f.kappa - 1.0).abs() < 1e-7);
            assert!(f.tau.abs() < 1e-6);
            assert_eq!(f.epsilon, 1.0);
            check_gram(f);
        }
    }

    #[test]
    fn timelike_hyperbola() {
        let fr = frenet_apparatus(&sample(["sinh(s)", "cosh(s)", "0"], (-1.0, 1.0)), 1e-9).unwrap();
        for f in &fr {
            assert_eq!(f.curve, CausalCharacter::Timelike);
            assert!((f.kappa - 1.0).abs() < 1e-6);
            assert!(f.tau.abs() < 1e-5);
            check_gram(f);
        }
    }

    #[test]
    fn lorentzian_helix_has_constant_torsion() {
        // spacelike helix (a sinh s... ) with timelike axis: (2s, 2cos s... ) scaled
        let fr = frenet_apparatus(&sample(["s", "2*cos(s)", "2*sin(s)"], (0.0, 2.0)), 1e-9).unwrap();
        // ⟨γ̇,γ̇⟩ = 3: κ = 2/3, τ = 1/3 up to sign
        for f in &fr {
            assert!((f.kappa - 2.0 / 3.0).abs() < 1e-6);
            assert!((f.tau.abs() - 1.0 / 3.0).abs() < 1e-5, "{}", f.tau);
            check_gram(f);
        }
    }

    #[test]
    fn straight_line_fails() {
        let r = frenet_apparatus(&sample(["0", "s", "2*s"], (0.0, 1.0)), 1e-9);
        assert!(matches!(r, Err(Error::VanishingCurvature(_))));
    }
}
