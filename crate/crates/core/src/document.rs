//! JSON input documents: surface curves for analysis and invariant profiles
//! for synthesis.

use serde::{Deserialize, Serialize};

use crate::curve::{CurveForm, CurveSpec, NumericConfig, SurfaceSpec, SurfaceType, DEFAULT_SAMPLES};
use crate::error::{Error, Result};
use crate::expr::{ScalarExpr, Var};
use crate::frames::CaseTag;
use crate::synthesis::{InvariantProfile, DEFAULT_H_INT};

/// Smallest accepted sample count.
pub const MIN_SAMPLES: usize = 16;

/// An expression field: a formula string or a plain number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExprText {
    Number(f64),
    Text(String),
}

impl ExprText {
    fn parse(&self, field: &str, allowed: &[Var]) -> Result<ScalarExpr> {
        let e = match self {
            ExprText::Number(x) => ScalarExpr::constant(*x),
            ExprText::Text(t) => ScalarExpr::parse(t).map_err(|e| in_field(e, field))?,
        };
        for var in [Var::S, Var::U, Var::V] {
            if e.uses(var) && !allowed.contains(&var) {
                return Err(Error::Validation(format!("field `{field}` may not use variable `{}`", var.name())));
            }
        }
        Ok(e)
    }
}

fn in_field(e: Error, field: &str) -> Error {
    match e {
        Error::Syntax { offset, message } => Error::Syntax { offset, message: format!("{message} (field `{field}`)") },
        other => other,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDoc {
    pub x1: ExprText,
    pub x2: ExprText,
    pub x3: ExprText,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub declared: Option<SurfaceType>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveDoc {
    OnSurface {
        u: ExprText,
        v: ExprText,
    },
    Free {
        x1: ExprText,
        x2: ExprText,
        x3: ExprText,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDoc {
    pub case: CaseTag,
    pub kappa_g: ExprText,
    pub kappa_n: ExprText,
    pub tau_g: ExprText,
}

/// Raw input document. `curve` (with optional `surface`) selects analysis,
/// `profile` selects synthesis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileDoc>,
    pub window: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_int: Option<f64>,
}

/// Overrides that take precedence over document values.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub samples: Option<usize>,
    pub h: Option<f64>,
    pub eps: Option<f64>,
}

/// Resolved numerical settings of a run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub samples: usize,
    pub h: f64,
    pub eps: f64,
}

/// A validated document.
#[derive(Clone, Debug)]
pub enum Job {
    Analyze { surface: Option<SurfaceSpec>, curve: CurveSpec, settings: Settings },
    Synthesize { profile: InvariantProfile, settings: Settings },
}

impl Job {
    pub fn settings(&self) -> Settings {
        match self {
            Job::Analyze { settings, .. } | Job::Synthesize { settings, .. } => *settings,
        }
    }

    pub fn mode(&self) -> &'static str {
        match self {
            Job::Analyze { .. } => "analyze",
            Job::Synthesize { .. } => "synthesize",
        }
    }

    pub fn numeric(&self) -> NumericConfig {
        let s = self.settings();
        NumericConfig { h: s.h, eps: s.eps }
    }
}

impl Document {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("malformed document: {e}")))
    }

    /// Check fields and parse expressions. Explicit overrides win over the
    /// document, which wins over the defaults.
    pub fn validate(&self, over: &Overrides) -> Result<Job> {
        let [s0, s1] = self.window;
        if !(s0.is_finite() && s1.is_finite() && s0 < s1) {
            return Err(Error::Validation(format!("window must satisfy s0 < s1, got [{s0}, {s1}]")));
        }
        let defaults = NumericConfig::default();
        let settings = Settings {
            samples: over.samples.or(self.samples).unwrap_or(DEFAULT_SAMPLES),
            h: over.h.or(self.h).unwrap_or(defaults.h),
            eps: over.eps.or(self.eps).unwrap_or(defaults.eps),
        };
        if settings.samples < MIN_SAMPLES {
            return Err(Error::Validation(format!("samples must be at least {MIN_SAMPLES}, got {}", settings.samples)));
        }
        if !(settings.h > 0.0 && settings.h.is_finite()) {
            return Err(Error::Validation(format!("h must be positive, got {}", settings.h)));
        }
        if !(settings.eps > 0.0 && settings.eps.is_finite()) {
            return Err(Error::Validation(format!("eps must be positive, got {}", settings.eps)));
        }
        match (&self.curve, &self.profile) {
            (Some(_), Some(_)) => Err(Error::Validation("document has both `curve` and `profile`".into())),
            (None, None) => Err(Error::Validation("document needs a `curve` or a `profile`".into())),
            (Some(curve), None) => {
                if self.h_int.is_some() {
                    return Err(Error::Validation("`h_int` applies to profile documents only".into()));
                }
                let surface = self
                    .surface
                    .as_ref()
                    .map(|sd| -> Result<SurfaceSpec> {
                        let uv = [Var::U, Var::V];
                        Ok(SurfaceSpec {
                            x: [sd.x1.parse("surface.x1", &uv)?, sd.x2.parse("surface.x2", &uv)?, sd.x3.parse("surface.x3", &uv)?],
                            declared: sd.declared,
                        })
                    })
                    .transpose()?;
                let s = [Var::S];
                let form = match curve {
                    CurveDoc::OnSurface { u, v } => {
                        if surface.is_none() {
                            return Err(Error::Validation("curve given by (u, v) needs a `surface`".into()));
                        }
                        CurveForm::OnSurface { u: u.parse("curve.u", &s)?, v: v.parse("curve.v", &s)? }
                    }
                    CurveDoc::Free { x1, x2, x3 } => {
                        if surface.is_some() {
                            return Err(Error::Validation(
                                "a free curve cannot be combined with a `surface`; give the curve by (u, v)".into(),
                            ));
                        }
                        CurveForm::Free { x: [x1.parse("curve.x1", &s)?, x2.parse("curve.x2", &s)?, x3.parse("curve.x3", &s)?] }
                    }
                };
                let curve = CurveSpec { form, window: (s0, s1), samples: settings.samples };
                Ok(Job::Analyze { surface, curve, settings })
            }
            (None, Some(p)) => {
                if self.surface.is_some() {
                    return Err(Error::Validation("profile documents take no `surface`".into()));
                }
                let h_int = self.h_int.unwrap_or(DEFAULT_H_INT);
                if !(h_int > 0.0 && h_int.is_finite()) {
                    return Err(Error::Validation(format!("h_int must be positive, got {h_int}")));
                }
                let s = [Var::S];
                let profile = InvariantProfile {
                    case: p.case,
                    kappa_g: p.kappa_g.parse("profile.kappa_g", &s)?,
                    kappa_n: p.kappa_n.parse("profile.kappa_n", &s)?,
                    tau_g: p.tau_g.parse("profile.tau_g", &s)?,
                    window: (s0, s1),
                    h_int,
                };
                Ok(Job::Synthesize { profile, settings })
            }
        }
    }
}

/// Parse and validate a JSON document in one step.
pub fn load_job(text: &str, over: &Overrides) -> Result<Job> {
    Document::from_json(text)?.validate(over)
}
