//! Curves manufactured by integrating the Darboux frame equations.

use crate::curve::CurveSamples;
use crate::error::{Error, Result};
use crate::expr::ScalarExpr;
use crate::frames::CaseTag;
use crate::lorentz::{mcross, mdot, LVec3};

/// Default RK4 step.
pub const DEFAULT_H_INT: f64 = 1e-3;
/// Integration aborts once the frame Gram matrix drifts this far.
pub const MAX_GRAM_DRIFT: f64 = 1e-4;
/// Tolerance on the initial frame's signature and orientation.
pub const INITIAL_FRAME_TOL: f64 = 1e-12;

/// Prescribed Darboux invariants as functions of arc length.
#[derive(Clone, Debug)]
pub struct InvariantProfile {
    pub case: CaseTag,
    pub kappa_g: ScalarExpr,
    pub kappa_n: ScalarExpr,
    pub tau_g: ScalarExpr,
    pub window: (f64, f64),
    pub h_int: f64,
}

impl InvariantProfile {
    pub fn eval(&self, s: f64) -> Result<(f64, f64, f64)> {
        Ok((self.kappa_g.eval_s(s)?, self.kappa_n.eval_s(s)?, self.tau_g.eval_s(s)?))
    }
}

/// Starting point and frame (T, B, N).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialFrame {
    pub position: LVec3,
    pub t: LVec3,
    pub b: LVec3,
    pub n: LVec3,
}

impl InitialFrame {
    /// The case's canonical frame at the origin.
    pub fn canonical(case: CaseTag) -> Self {
        let (t, b, n) = case.canonical_frame();
        InitialFrame { position: LVec3::ZERO, t, b, n }
    }

    /// Largest deviation from the case signature, orthogonality and B = N × T.
    pub fn deviation(&self, case: CaseTag) -> f64 {
        gram_drift(case, self.t, self.b, self.n).max((mcross(self.n, self.t) - self.b).euclid_norm())
    }
}

#[derive(Clone, Debug)]
pub struct SynthesizedCurve {
    pub case: CaseTag,
    pub s: Vec<f64>,
    pub pos: Vec<LVec3>,
    pub t: Vec<LVec3>,
    pub b: Vec<LVec3>,
    pub n: Vec<LVec3>,
    /// max over steps of max |G_ij − signature_ij|.
    pub gram_drift: f64,
    pub step: f64,
}

/// Max entrywise deviation of the Gram matrix of (T, B, N) from the case signature.
pub fn gram_drift(case: CaseTag, t: LVec3, b: LVec3, n: LVec3) -> f64 {
    let sig = case.signature();
    let v = [t, b, n];
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in i..3 {
            let target = if i == j { sig[i] } else { 0.0 };
            worst = worst.max((mdot(v[i], v[j]) - target).abs());
        }
    }
    worst
}

#[derive(Clone, Copy)]
struct State([LVec3; 4]);

impl State {
    fn axpy(self, k: &State, a: f64) -> State {
        let mut out = self.0;
        for (o, ki) in out.iter_mut().zip(k.0) {
            *o += ki * a;
        }
        State(out)
    }
}

fn rhs(p: &InvariantProfile, s: f64, y: &State) -> Result<State> {
    let (kg, kn, tg) = p.eval(s)?;
    let [t, b, n, _] = y.0;
    let (dt, db, dn) = p.case.darboux_rhs(kg, kn, tg, t, b, n);
    Ok(State([dt, db, dn, t]))
}

/// Integrate with exactly `steps` classical RK4 steps over the window.
pub fn integrate_darboux_frame_steps(
    p: &InvariantProfile,
    init: &InitialFrame,
    steps: usize,
) -> Result<SynthesizedCurve> {
    let (s0, s1) = p.window;
    if !(s1 > s0) || !s0.is_finite() || !s1.is_finite() {
        return Err(Error::Validation(format!("window [{s0}, {s1}] is empty or not finite")));
    }
    if steps == 0 {
        return Err(Error::Validation("need at least one step".into()));
    }
    let dev = init.deviation(p.case);
    if dev > INITIAL_FRAME_TOL {
        return Err(Error::BadInitialFrame(dev));
    }
    let h = (s1 - s0) / steps as f64;
    let mut y = State([init.t, init.b, init.n, init.position]);
    let mut out = SynthesizedCurve {
        case: p.case,
        s: Vec::with_capacity(steps + 1),
        pos: Vec::with_capacity(steps + 1),
        t: Vec::with_capacity(steps + 1),
        b: Vec::with_capacity(steps + 1),
        n: Vec::with_capacity(steps + 1),
        gram_drift: 0.0,
        step: h,
    };
    let push = |out: &mut SynthesizedCurve, s: f64, y: &State| {
        out.s.push(s);
        out.t.push(y.0[0]);
        out.b.push(y.0[1]);
        out.n.push(y.0[2]);
        out.pos.push(y.0[3]);
    };
    push(&mut out, s0, &y);
    for i in 0..steps {
        let s = s0 + i as f64 * h;
        let k1 = rhs(p, s, &y)?;
        let k2 = rhs(p, s + 0.5 * h, &y.axpy(&k1, 0.5 * h))?;
        let k3 = rhs(p, s + 0.5 * h, &y.axpy(&k2, 0.5 * h))?;
        let k4 = rhs(p, s + h, &y.axpy(&k3, h))?;
        y = y.axpy(&k1, h / 6.0).axpy(&k2, h / 3.0).axpy(&k3, h / 3.0).axpy(&k4, h / 6.0);
        let s_next = if i + 1 == steps { s1 } else { s0 + (i + 1) as f64 * h };
        let drift = gram_drift(p.case, y.0[0], y.0[1], y.0[2]);
        if !(drift <= MAX_GRAM_DRIFT) {
            return Err(Error::StepTooLarge { s: s_next, drift });
        }
        out.gram_drift = out.gram_drift.max(drift);
        push(&mut out, s_next, &y);
    }
    Ok(out)
}

/// Integrate with the profile's step (rounded so it divides the window).
pub fn integrate_darboux_frame(p: &InvariantProfile, init: &InitialFrame) -> Result<SynthesizedCurve> {
    if !(p.h_int > 0.0) {
        return Err(Error::Validation(format!("h_int must be positive, got {}", p.h_int)));
    }
    let steps = ((p.window.1 - p.window.0) / p.h_int).round().max(1.0) as usize;
    integrate_darboux_frame_steps(p, init, steps)
}

impl SynthesizedCurve {
    /// `samples` arc-length samples with the integrated normal attached.
    /// Derivatives come from the full integration grid before thinning.
    pub fn to_curve_samples(&self, samples: usize) -> Result<CurveSamples> {
        let steps = self.s.len() - 1;
        if samples < 5 || !steps.is_multiple_of(samples - 1) {
            return Err(Error::Validation(format!(
                "{samples} samples do not divide {steps} integration steps"
            )));
        }
        let full = CurveSamples::from_frame_table(self.s.clone(), self.pos.clone(), self.t.clone(), Some(self.n.clone()))?;
        Ok(full.decimate(steps / (samples - 1)))
    }
}

/// Integrate so that the output grid has `samples` points, with a step no
/// larger than the profile's.
pub fn synthesize_samples(p: &InvariantProfile, init: &InitialFrame, samples: usize) -> Result<(SynthesizedCurve, CurveSamples)> {
    if samples < 5 {
        return Err(Error::Validation(format!("need at least 5 samples, got {samples}")));
    }
    if !(p.h_int > 0.0) {
        return Err(Error::Validation(format!("h_int must be positive, got {}", p.h_int)));
    }
    let intervals = samples - 1;
    let per = ((p.window.1 - p.window.0) / (p.h_int * intervals as f64)).ceil().max(1.0) as usize;
    let curve = integrate_darboux_frame_steps(p, init, per * intervals)?;
    let table = curve.to_curve_samples(samples)?;
    Ok((curve, table))
}

/// Closed-form profiles whose characterization function is constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RnsFamily {
    /// Constant κ_g, κ_n, τ_g.
    Constant { kappa_g: f64, kappa_n: f64, tau_g: f64 },
    /// κ_g = c cosh(ms), τ_g = c sinh(ms), κ_n = k (SS, TT).
    Hyperbolic { c: f64, m: f64, k: f64 },
    /// κ_g = c sinh(ms), τ_g = c cosh(ms), κ_n = k (SS, TT).
    ConjugateHyperbolic { c: f64, m: f64, k: f64 },
    /// κ_g = c cos(ms), τ_g = c sin(ms), κ_n = k (ST).
    Trigonometric { c: f64, m: f64, k: f64 },
}

fn lit(x: f64) -> String {
    if x < 0.0 {
        format!("({x:?})")
    } else {
        format!("{x:?}")
    }
}

fn guard(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::DomainGuard(msg()))
    }
}

impl RnsFamily {
    /// Characterization constant predicted in closed form: (m − k)/c for the
    /// hyperbolic and trigonometric families, (k − m)/c for the conjugate one.
    /// For constants it depends on the kernel and is left to the caller.
    pub fn analytic_constant(&self) -> Option<f64> {
        match *self {
            RnsFamily::Hyperbolic { c, m, k } | RnsFamily::Trigonometric { c, m, k } => Some((m - k) / c),
            RnsFamily::ConjugateHyperbolic { c, m, k } => Some((k - m) / c),
            RnsFamily::Constant { .. } => None,
        }
    }
}

/// Build the family's profile for `case` on `window` with step `h_int`.
pub fn make_rns_family(case: CaseTag, family: RnsFamily, window: (f64, f64), h_int: f64) -> Result<InvariantProfile> {
    let e = |t: String| ScalarExpr::parse(&t);
    let (kg, kn, tg) = match family {
        RnsFamily::Constant { kappa_g, kappa_n, tau_g } => {
            guard(kappa_g != 0.0, || "constant family needs kappa_g != 0".into())?;
            guard(case == CaseTag::ST || kappa_g.abs() != tau_g.abs(), || {
                "constant family needs kappa_g^2 != tau_g^2 outside ST".into()
            })?;
            (lit(kappa_g), lit(kappa_n), lit(tau_g))
        }
        RnsFamily::Hyperbolic { c, m, k } | RnsFamily::ConjugateHyperbolic { c, m, k } => {
            guard(c != 0.0, || "family needs c != 0".into())?;
            guard(case != CaseTag::ST, || "hyperbolic families are for SS and TT".into())?;
            let conj = matches!(family, RnsFamily::ConjugateHyperbolic { .. });
            if conj {
                guard(m != 0.0 && (window.0 > 0.0 || window.1 < 0.0), || {
                    "conjugate family has kappa_g = 0 at s = 0; window must exclude it and m != 0".into()
                })?;
            }
            let (a, b) = if conj { ("sinh", "cosh") } else { ("cosh", "sinh") };
            (format!("{}*{a}({}*s)", lit(c), lit(m)), lit(k), format!("{}*{b}({}*s)", lit(c), lit(m)))
        }
        RnsFamily::Trigonometric { c, m, k } => {
            guard(c != 0.0, || "family needs c != 0".into())?;
            guard(case == CaseTag::ST, || "trigonometric family is for ST".into())?;
            (format!("{}*cos({}*s)", lit(c), lit(m)), lit(k), format!("{}*sin({}*s)", lit(c), lit(m)))
        }
    };
    Ok(InvariantProfile { case, kappa_g: e(kg)?, kappa_n: e(kn)?, tau_g: e(tg)?, window, h_int })
}
