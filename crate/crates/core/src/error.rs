use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants split into two families: input/validation problems (bad documents,
/// malformed expressions, out-of-range configuration) and numerical failures
/// raised while computing frames, series or axes. [`Error::is_validation`]
/// tells the two apart; the CLI maps them onto distinct exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("evaluation error: {0}")]
    Eval(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("vector is lightlike or zero")]
    LightlikeInput,

    #[error("timelike vectors lie in opposite time cones")]
    OppositeCone,

    #[error("vectors span a degenerate (lightlike) plane")]
    DegeneratePlane,

    #[error("curve velocity is lightlike near parameter {0}")]
    LightlikeVelocity(f64),

    #[error("surface normal is lightlike at s = {0}")]
    LightlikeNormal(f64),

    #[error("surface normal degenerates (σ_u × σ_v ≈ 0) at s = {0}")]
    DegenerateNormal(f64),

    #[error("causal character changes along the curve at s = {0}")]
    MixedCausalCharacter(f64),

    #[error("curvature vanishes at s = {0}")]
    VanishingCurvature(f64),

    #[error("principal normal is lightlike at s = {0}")]
    LightlikePrincipalNormal(f64),

    #[error("no surface normal attached to the curve samples")]
    MissingNormal,

    #[error("angle between N and n undefined at s = {0}")]
    AngleUndefined(f64),

    #[error("geodesic curvature vanishes on the whole grid (first at s = {0})")]
    VanishingKappaG(f64),

    #[error("no valid samples for any characterization function")]
    EmptyValidGrid,

    #[error("constant {0} sits on |c| = 1: no hyperbolic angle")]
    AmbiguousAngle(f64),

    #[error("radicand not positive at s = {0}")]
    RadicandViolation(f64),

    #[error("initial frame violates the case signature (deviation {0:e})")]
    BadInitialFrame(f64),

    #[error("frame Gram drift {drift:e} exceeded the limit at s = {s}; reduce the step")]
    StepTooLarge { s: f64, drift: f64 },

    #[error("{0}")]
    DomainGuard(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by the input document rather than by the numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownIdentifier { .. }
                | Error::Validation(_)
                | Error::DomainGuard(_)
        )
    }

    /// Stable name of the variant, used in diagnostics and the C interface.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownIdentifier { .. } => "UnknownIdentifier",
            Error::Eval(_) => "EvalError",
            Error::Validation(_) => "ValidationError",
            Error::LightlikeInput => "LightlikeInput",
            Error::OppositeCone => "OppositeCone",
            Error::DegeneratePlane => "DegeneratePlane",
            Error::LightlikeVelocity(_) => "LightlikeVelocity",
            Error::LightlikeNormal(_) => "LightlikeNormal",
            Error::DegenerateNormal(_) => "DegenerateNormal",
            Error::MixedCausalCharacter(_) => "MixedCausalCharacter",
            Error::VanishingCurvature(_) => "VanishingCurvature",
            Error::LightlikePrincipalNormal(_) => "LightlikePrincipalNormal",
            Error::MissingNormal => "MissingNormal",
            Error::AngleUndefined(_) => "AngleUndefined",
            Error::VanishingKappaG(_) => "VanishingKappaG",
            Error::EmptyValidGrid => "EmptyValidGrid",
            Error::AmbiguousAngle(_) => "AmbiguousAngle",
            Error::RadicandViolation(_) => "RadicandViolation",
            Error::BadInitialFrame(_) => "BadInitialFrame",
            Error::StepTooLarge { .. } => "StepTooLarge",
            Error::DomainGuard(_) => "DomainGuard",
            Error::Io(_) => "IoError",
        }
    }
}
