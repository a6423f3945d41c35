use serde::{Deserialize, Serialize};

use crate::frames::DarbouxSample;

/// Default threshold for the geodesic / asymptotic / line-of-curvature flags.
pub const DEFAULT_SPECIAL_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialFlags {
    pub geodesic: bool,
    pub asymptotic: bool,
    pub line_of_curvature: bool,
}

fn max_abs(darboux: &[DarbouxSample], f: impl Fn(&DarbouxSample) -> f64) -> f64 {
    darboux.iter().fold(0.0f64, |a, d| a.max(f(d).abs()))
}

/// κ_g ≡ 0, κ_n ≡ 0 and τ_g ≡ 0 within `tol` (sup-norm).
pub fn classify_special(darboux: &[DarbouxSample], tol: f64) -> SpecialFlags {
    SpecialFlags {
        geodesic: max_abs(darboux, |d| d.kappa_g) < tol,
        asymptotic: max_abs(darboux, |d| d.kappa_n) < tol,
        line_of_curvature: max_abs(darboux, |d| d.tau_g) < tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::LVec3;

    #[test]
    fn flags() {
        let mk = |kappa_g, kappa_n, tau_g| DarbouxSample {
            s: 0.0,
            t: LVec3::ZERO,
            b: LVec3::ZERO,
            n: LVec3::ZERO,
            kappa_g,
            kappa_n,
            tau_g,
        };
        let f = classify_special(&[mk(0.0, 1.0, 1e-9), mk(1e-8, 1.0, 0.0)], 1e-6);
        assert_eq!(f, SpecialFlags { geodesic: true, asymptotic: false, line_of_curvature: true });
        let f = classify_special(&[mk(2.0, 0.5, 1.0)], 1e-6);
        assert_eq!(f, SpecialFlags::default());
    }
}
