//! Vector algebra in Minkowski 3-space with signature (−,+,+).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default null-cone tolerance at unit scale.
pub const DEFAULT_EPS: f64 = 1e-9;

/// A vector of Minkowski 3-space. The first coordinate is the timelike one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LVec3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl LVec3 {
    pub const ZERO: LVec3 = LVec3::new(0.0, 0.0, 0.0);
    pub const E1: LVec3 = LVec3::new(1.0, 0.0, 0.0);
    pub const E2: LVec3 = LVec3::new(0.0, 1.0, 0.0);
    pub const E3: LVec3 = LVec3::new(0.0, 0.0, 1.0);

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        LVec3 { x1, x2, x3 }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        LVec3::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    pub fn dot(self, other: LVec3) -> f64 {
        mdot(self, other)
    }

    pub fn cross(self, other: LVec3) -> LVec3 {
        mcross(self, other)
    }

    /// ⟨v,v⟩, which may be negative.
    pub fn norm_sq(self) -> f64 {
        mdot(self, self)
    }

    pub fn norm(self) -> f64 {
        mnorm(self)
    }

    /// Ordinary Euclidean length of the coordinate triple.
    pub fn euclid_norm(self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    pub fn euclid_dist(self, other: LVec3) -> f64 {
        (self - other).euclid_norm()
    }

    pub fn causal(self, eps: f64) -> CausalCharacter {
        causal_character(self, eps)
    }
}

impl Add for LVec3 {
    type Output = LVec3;
    fn add(self, o: LVec3) -> LVec3 {
        LVec3::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl AddAssign for LVec3 {
    fn add_assign(&mut self, o: LVec3) {
        *self = *self + o;
    }
}

impl Sub for LVec3 {
    type Output = LVec3;
    fn sub(self, o: LVec3) -> LVec3 {
        LVec3::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Mul<f64> for LVec3 {
    type Output = LVec3;
    fn mul(self, k: f64) -> LVec3 {
        LVec3::new(self.x1 * k, self.x2 * k, self.x3 * k)
    }
}

impl Mul<LVec3> for f64 {
    type Output = LVec3;
    fn mul(self, v: LVec3) -> LVec3 {
        v * self
    }
}

impl Div<f64> for LVec3 {
    type Output = LVec3;
    fn div(self, k: f64) -> LVec3 {
        LVec3::new(self.x1 / k, self.x2 / k, self.x3 / k)
    }
}

impl Neg for LVec3 {
    type Output = LVec3;
    fn neg(self) -> LVec3 {
        LVec3::new(-self.x1, -self.x2, -self.x3)
    }
}

impl fmt::Display for LVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x1, self.x2, self.x3)
    }
}

/// Lorentzian inner product −x1y1 + x2y2 + x3y3.
pub fn mdot(x: LVec3, y: LVec3) -> f64 {
    -x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3
}

/// Lorentzian cross product. Satisfies e1×e2 = −e3, e2×e3 = e1, e3×e1 = −e2,
/// and ⟨x×y, z⟩ = −det(x, y, z).
pub fn mcross(x: LVec3, y: LVec3) -> LVec3 {
    LVec3::new(
        x.x2 * y.x3 - x.x3 * y.x2,
        x.x1 * y.x3 - x.x3 * y.x1,
        x.x2 * y.x1 - x.x1 * y.x2,
    )
}

/// √|⟨v,v⟩|; zero on the null cone.
pub fn mnorm(v: LVec3) -> f64 {
    mdot(v, v).abs().sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

impl CausalCharacter {
    /// Sign of ⟨v,v⟩ for a unit vector of this character; 0 for lightlike.
    pub fn sign(self) -> f64 {
        match self {
            CausalCharacter::Spacelike => 1.0,
            CausalCharacter::Timelike => -1.0,
            CausalCharacter::Lightlike => 0.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CausalCharacter::Spacelike => "spacelike",
            CausalCharacter::Timelike => "timelike",
            CausalCharacter::Lightlike => "lightlike",
        }
    }
}

/// Classify `v` against the null cone. The zero vector counts as spacelike.
pub fn causal_character(v: LVec3, eps: f64) -> CausalCharacter {
    let q = mdot(v, v);
    if v == LVec3::ZERO || q > eps {
        CausalCharacter::Spacelike
    } else if q < -eps {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Lightlike
    }
}

/// Scale-aware classification: compares ⟨v,v⟩ with `eps` times the squared
/// Euclidean length, so un-normalized vectors classify like their directions.
pub(crate) fn causal_character_scaled(v: LVec3, eps: f64) -> CausalCharacter {
    let e2 = v.x1 * v.x1 + v.x2 * v.x2 + v.x3 * v.x3;
    if e2 == 0.0 {
        return CausalCharacter::Spacelike;
    }
    causal_character(v / e2.sqrt(), eps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AngleKind {
    /// Two spacelike vectors spanning a spacelike plane: ⟨v,w⟩ = ‖v‖‖w‖ cos θ.
    CosSpacelikePlane,
    /// Two spacelike vectors spanning a timelike plane: |⟨v,w⟩| = ‖v‖‖w‖ cosh θ.
    CoshTimelikePlane,
    /// One spacelike, one timelike: |⟨v,w⟩| = ‖v‖‖w‖ sinh θ.
    SinhMixed,
    /// Two timelike vectors in the same cone: ⟨v,w⟩ = −‖v‖‖w‖ cosh θ.
    CoshSameCone,
}

impl AngleKind {
    /// The trigonometric or hyperbolic function that links the angle to ⟨v,w⟩.
    pub fn apply(self, theta: f64) -> f64 {
        match self {
            AngleKind::CosSpacelikePlane => theta.cos(),
            AngleKind::CoshTimelikePlane => theta.cosh(),
            AngleKind::SinhMixed => theta.sinh(),
            AngleKind::CoshSameCone => -theta.cosh(),
        }
    }
}

/// A non-negative Lorentzian angle together with the definition it comes from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LorentzAngle {
    pub value: f64,
    pub kind: AngleKind,
}

impl LorentzAngle {
    /// ⟨v,w⟩ predicted by the defining identity. For the two kinds whose
    /// definition is stated on |⟨v,w⟩| this is the magnitude.
    pub fn reconstruct(&self, norm_v: f64, norm_w: f64) -> f64 {
        norm_v * norm_w * self.kind.apply(self.value)
    }
}

/// Lorentzian angle between two non-null vectors.
///
/// Both vectors are normalized first, so `eps` applies at unit scale for the
/// inputs and for the cross product that decides the character of their span.
pub fn lorentz_angle(v: LVec3, w: LVec3, eps: f64) -> Result<LorentzAngle> {
    let cv = causal_character_scaled(v, eps);
    let cw = causal_character_scaled(w, eps);
    if cv == CausalCharacter::Lightlike
        || cw == CausalCharacter::Lightlike
        || v == LVec3::ZERO
        || w == LVec3::ZERO
    {
        return Err(Error::LightlikeInput);
    }
    let (nv, nw) = (mnorm(v), mnorm(w));
    let (u1, u2) = (v / nv, w / nw);
    let c = mdot(u1, u2);

    use CausalCharacter::*;
    match (cv, cw) {
        (Spacelike, Spacelike) => match causal_character(mcross(u1, u2), eps) {
            Timelike => Ok(LorentzAngle {
                value: c.clamp(-1.0, 1.0).acos(),
                kind: AngleKind::CosSpacelikePlane,
            }),
            Spacelike => Ok(LorentzAngle {
                value: c.abs().max(1.0).acosh(),
                kind: AngleKind::CoshTimelikePlane,
            }),
            Lightlike => Err(Error::DegeneratePlane),
        },
        (Timelike, Timelike) => {
            if c > 0.0 {
                return Err(Error::OppositeCone);
            }
            Ok(LorentzAngle {
                value: (-c).max(1.0).acosh(),
                kind: AngleKind::CoshSameCone,
            })
        }
        _ => Ok(LorentzAngle {
            value: c.abs().asinh(),
            kind: AngleKind::SinhMixed,
        }),
    }
}
