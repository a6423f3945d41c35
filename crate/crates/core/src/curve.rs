//! Analytic curve and surface definitions, and their conversion into sample
//! tables uniform in arc length.

use serde::{Deserialize, Serialize};

use crate::deriv::{central_diff, grid_derivative, DEFAULT_H};
use crate::error::{Error, Result};
use crate::expr::{Point, ScalarExpr};
use crate::lorentz::{causal_character_scaled, mcross, mdot, mnorm, CausalCharacter, LVec3, DEFAULT_EPS};

/// Default number of arc-length samples.
pub const DEFAULT_SAMPLES: usize = 1001;

/// Third derivatives are taken with this multiple of the base step; at
/// h = 1e-4 the ε/h³ rounding of a direct third-order stencil is ~1e-4.
pub const THIRD_ORDER_STEP_SCALE: f64 = 10.0;

/// Fine subintervals per output sample in the arc-length quadrature.
const QUADRATURE_REFINE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceType {
    Spacelike,
    Timelike,
}

/// A surface patch σ(u, v).
#[derive(Clone, Debug)]
pub struct SurfaceSpec {
    pub x: [ScalarExpr; 3],
    pub declared: Option<SurfaceType>,
}

#[derive(Clone, Debug)]
pub enum CurveForm {
    /// γ(t) = σ(u(t), v(t)) on an attached surface.
    OnSurface { u: ScalarExpr, v: ScalarExpr },
    /// γ(t) given directly by its three coordinates.
    Free { x: [ScalarExpr; 3] },
}

/// A parametrized curve. Expressions use `s` as the (not necessarily
/// arc-length) parameter; `window` is the parameter interval.
#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub form: CurveForm,
    pub window: (f64, f64),
    pub samples: usize,
}

/// Numerical knobs shared by the sampling and frame code.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericConfig {
    /// Finite-difference step for pointwise stencils.
    pub h: f64,
    /// Null-cone tolerance at unit scale.
    pub eps: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig { h: DEFAULT_H, eps: DEFAULT_EPS }
    }
}

/// Unit normal field along a sampled curve and its arc-length derivative.
#[derive(Clone, Debug)]
pub struct NormalSamples {
    pub n: Vec<LVec3>,
    pub dn: Vec<LVec3>,
    /// When false the sign of `n` is arbitrary and may be flipped by the
    /// Darboux code; integrated normals come with a fixed orientation.
    pub oriented: bool,
}

/// A curve sampled uniformly in arc length, with derivatives with respect to
/// arc length up to third order.
#[derive(Clone, Debug)]
pub struct CurveSamples {
    pub s: Vec<f64>,
    pub spacing: f64,
    pub pos: Vec<LVec3>,
    pub d1: Vec<LVec3>,
    pub d2: Vec<LVec3>,
    pub d3: Vec<LVec3>,
    pub normal: Option<NormalSamples>,
}

impl CurveSamples {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Build a table from positions, tangents and (optionally) normals on a
    /// uniform grid, differentiating the tangent table for γ″ and γ‴.
    pub fn from_frame_table(
        s: Vec<f64>,
        pos: Vec<LVec3>,
        tangent: Vec<LVec3>,
        normal: Option<Vec<LVec3>>,
    ) -> Result<Self> {
        if s.len() < 5 || pos.len() != s.len() || tangent.len() != s.len() {
            return Err(Error::Validation("frame table needs ≥ 5 aligned samples".into()));
        }
        let spacing = (s[s.len() - 1] - s[0]) / (s.len() - 1) as f64;
        let d2 = grid_derivative(&tangent, spacing)?;
        let d3 = grid_derivative(&d2, spacing)?;
        let normal = match normal {
            Some(n) => {
                if n.len() != s.len() {
                    return Err(Error::Validation("normal table length mismatch".into()));
                }
                let dn = grid_derivative(&n, spacing)?;
                Some(NormalSamples { n, dn, oriented: true })
            }
            None => None,
        };
        Ok(CurveSamples { s, spacing, pos, d1: tangent, d2, d3, normal })
    }

    /// Keep every `stride`-th sample.
    pub fn decimate(&self, stride: usize) -> CurveSamples {
        let stride = stride.max(1);
        let pick = |v: &Vec<LVec3>| v.iter().step_by(stride).copied().collect::<Vec<_>>();
        CurveSamples {
            s: self.s.iter().step_by(stride).copied().collect(),
            spacing: self.spacing * stride as f64,
            pos: pick(&self.pos),
            d1: pick(&self.d1),
            d2: pick(&self.d2),
            d3: pick(&self.d3),
            normal: self.normal.as_ref().map(|ns| NormalSamples {
                n: pick(&ns.n),
                dn: pick(&ns.dn),
                oriented: ns.oriented,
            }),
        }
    }
}

fn eval_vec(x: &[ScalarExpr; 3], p: &Point) -> Result<LVec3> {
    Ok(LVec3::new(x[0].eval(p)?, x[1].eval(p)?, x[2].eval(p)?))
}

impl SurfaceSpec {
    pub fn eval(&self, u: f64, v: f64) -> Result<LVec3> {
        eval_vec(&self.x, &Point::uv(u, v))
    }

    /// σ_u × σ_v at (u, v), by central differences with step `h`.
    pub fn raw_normal(&self, u: f64, v: f64, h: f64) -> Result<LVec3> {
        let su = central_diff(|x| self.eval(x, v), u, 1, h)?;
        let sv = central_diff(|y| self.eval(u, y), v, 1, h)?;
        Ok(mcross(su, sv))
    }
}

/// Composite parametrization t ↦ γ(t) plus, for surface curves, the unit
/// normal t ↦ N(t).
struct Parametrized<'a> {
    curve: &'a CurveSpec,
    surface: Option<&'a SurfaceSpec>,
    h: f64,
    eps: f64,
}

impl Parametrized<'_> {
    fn uv(&self, t: f64) -> Result<(f64, f64)> {
        match &self.curve.form {
            CurveForm::OnSurface { u, v } => Ok((u.eval_s(t)?, v.eval_s(t)?)),
            CurveForm::Free { .. } => Err(Error::Validation("free curve has no (u, v)".into())),
        }
    }

    fn point(&self, t: f64) -> Result<LVec3> {
        match &self.curve.form {
            CurveForm::Free { x } => eval_vec(x, &Point::s(t)),
            CurveForm::OnSurface { .. } => {
                let surf = self.surface.ok_or_else(|| {
                    Error::Validation("curve given in (u, v) needs a surface".into())
                })?;
                let (u, v) = self.uv(t)?;
                surf.eval(u, v)
            }
        }
    }

    fn deriv(&self, t: f64, order: u8) -> Result<LVec3> {
        match order {
            1 => five_point_first(|x| self.point(x), t, self.h),
            3 => central_diff(|x| self.point(x), t, 3, self.h * THIRD_ORDER_STEP_SCALE),
            _ => central_diff(|x| self.point(x), t, order, self.h),
        }
    }

    fn velocity_sq(&self, t: f64) -> Result<(f64, LVec3)> {
        let d = self.deriv(t, 1)?;
        Ok((mdot(d, d), d))
    }

    fn speed(&self, t: f64) -> Result<f64> {
        Ok(mnorm(self.deriv(t, 1)?))
    }

    fn unit_normal(&self, t: f64, s_label: f64) -> Result<LVec3> {
        let surf = self.surface.ok_or(Error::MissingNormal)?;
        let (u, v) = self.uv(t)?;
        let raw = surf.raw_normal(u, v, self.h)?;
        if raw.euclid_norm() < 1e-10 {
            return Err(Error::DegenerateNormal(s_label));
        }
        if causal_character_scaled(raw, self.eps) == CausalCharacter::Lightlike {
            return Err(Error::LightlikeNormal(s_label));
        }
        Ok(raw / mnorm(raw))
    }
}

/// Fourth-order first derivative; arc length accumulates its bias, so the
/// two-point stencil is not enough here.
fn five_point_first<F: Fn(f64) -> Result<LVec3>>(f: F, x: f64, h: f64) -> Result<LVec3> {
    let (p2, p1, m1, m2) = (f(x + 2.0 * h)?, f(x + h)?, f(x - h)?, f(x - 2.0 * h)?);
    Ok((m2 - m1 * 8.0 + p1 * 8.0 - p2) * (1.0 / (12.0 * h)))
}

fn simpson<F: Fn(f64) -> Result<f64>>(f: &F, a: f64, b: f64) -> Result<f64> {
    let m = 0.5 * (a + b);
    Ok((b - a) / 6.0 * (f(a)? + 4.0 * f(m)? + f(b)?))
}

/// Sample `curve` uniformly in arc length.
///
/// Arc length is accumulated with composite Simpson on a grid eight times
/// finer than the output, inverted by Newton iteration, and derivatives with
/// respect to arc length come from chain-rule corrections of central
/// differences in the original parameter. Surface curves also get their unit
/// normal and its arc-length derivative. The returned `s` starts at the
/// window's left end, so unit-speed inputs reparametrize to themselves.
pub fn reparametrize_unit_speed(
    curve: &CurveSpec,
    surface: Option<&SurfaceSpec>,
    cfg: &NumericConfig,
) -> Result<CurveSamples> {
    let (t0, t1) = curve.window;
    if !(t1 > t0) || !t0.is_finite() || !t1.is_finite() {
        return Err(Error::Validation(format!("window [{t0}, {t1}] is empty or not finite")));
    }
    if curve.samples < 5 {
        return Err(Error::Validation(format!("need at least 5 samples, got {}", curve.samples)));
    }
    if !(cfg.h > 0.0) || !(cfg.eps >= 0.0) {
        return Err(Error::Validation("h must be positive and eps non-negative".into()));
    }
    let par = Parametrized { curve, surface, h: cfg.h, eps: cfg.eps };
    let on_surface = matches!(curve.form, CurveForm::OnSurface { .. });
    if on_surface && surface.is_none() {
        return Err(Error::Validation("curve given in (u, v) needs a surface".into()));
    }

    // Fine grid: check the velocity never touches the null cone, accumulate length.
    let m = (curve.samples - 1) * QUADRATURE_REFINE;
    let dt = (t1 - t0) / m as f64;
    let grid: Vec<f64> = (0..=m).map(|j| t0 + j as f64 * dt).collect();
    let mut sign = 0.0;
    for &t in &grid {
        let (q, d) = par.velocity_sq(t)?;
        let e2 = d.euclid_norm().powi(2);
        if q.abs() <= cfg.eps * e2 || e2 == 0.0 {
            return Err(Error::LightlikeVelocity(t));
        }
        if sign != 0.0 && q.signum() != sign {
            return Err(Error::LightlikeVelocity(t));
        }
        sign = q.signum();
    }
    let speed = |t: f64| par.speed(t);
    let mut cumulative = Vec::with_capacity(m + 1);
    cumulative.push(0.0);
    for j in 0..m {
        let seg = simpson(&speed, grid[j], grid[j + 1])?;
        cumulative.push(cumulative[j] + seg);
    }
    let length = cumulative[m];

    // Invert s(t) at uniform arc-length targets.
    let n = curve.samples;
    let spacing = length / (n - 1) as f64;
    let mut params = Vec::with_capacity(n);
    let mut j = 0usize;
    for k in 0..n {
        let target = if k == n - 1 { length } else { k as f64 * spacing };
        while j + 1 < m && cumulative[j + 1] < target {
            j += 1;
        }
        let (a, b) = (grid[j], grid[j + 1]);
        let base = cumulative[j];
        let mut t = a + (b - a) * ((target - base) / (cumulative[j + 1] - base)).clamp(0.0, 1.0);
        for _ in 0..20 {
            let resid = base + simpson(&speed, a, t)? - target;
            let step = resid / speed(t)?;
            t = (t - step).clamp(a, b);
            if step.abs() < 1e-15 * (1.0 + t.abs()) {
                break;
            }
        }
        params.push(t);
    }

    let mut out = CurveSamples {
        s: (0..n).map(|k| t0 + if k == n - 1 { length } else { k as f64 * spacing }).collect(),
        spacing,
        pos: Vec::with_capacity(n),
        d1: Vec::with_capacity(n),
        d2: Vec::with_capacity(n),
        d3: Vec::with_capacity(n),
        normal: None,
    };
    let mut normals = Vec::new();
    let mut dnormals = Vec::new();
    for (k, &t) in params.iter().enumerate() {
        let p1 = par.deriv(t, 1)?;
        let p2 = par.deriv(t, 2)?;
        let p3 = par.deriv(t, 3)?;
        let q = mdot(p1, p1);
        let sg = q.signum();
        let v = q.abs().sqrt();
        let v1 = sg * mdot(p1, p2) / v;
        let v2 = sg * (mdot(p2, p2) + mdot(p1, p3)) / v - v1 * v1 / v;
        let (v_2, v_3) = (v * v, v * v * v);
        out.pos.push(par.point(t)?);
        out.d1.push(p1 / v);
        out.d2.push(p2 / v_2 - p1 * (v1 / v_3));
        out.d3.push(
            p3 / v_3 - p2 * (3.0 * v1 / (v_3 * v)) - p1 * (v2 / (v_3 * v))
                + p1 * (3.0 * v1 * v1 / (v_3 * v_2)),
        );
        if on_surface {
            let sk = out.s[k];
            normals.push(par.unit_normal(t, sk)?);
            let dn = central_diff(|x| par.unit_normal(x, sk), t, 1, cfg.h)?;
            dnormals.push(dn / v);
        }
    }
    if on_surface {
        if let (Some(declared), Some(&n0)) = (surface.and_then(|sf| sf.declared), normals.first()) {
            let actual = match causal_character_scaled(n0, cfg.eps) {
                CausalCharacter::Timelike => SurfaceType::Spacelike,
                _ => SurfaceType::Timelike,
            };
            if actual != declared {
                return Err(Error::Validation(format!(
                    "surface declared {declared:?} but its normal makes it {actual:?}"
                )));
            }
        }
        out.normal = Some(NormalSamples { n: normals, dn: dnormals, oriented: false });
    }
    Ok(out)
}
