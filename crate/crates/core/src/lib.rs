//! Darboux and Frenet apparatuses of curves on spacelike and timelike
//! surfaces in Minkowski 3-space, relatively normal-slant helix detection,
//! and frame-ODE synthesis of test curves.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod curve;
pub mod deriv;
pub mod document;
pub mod error;
pub mod expr;
pub mod frames;
pub mod helix;
pub mod lorentz;
pub mod pipeline;
pub mod report;
pub mod synthesis;

pub use error::{Error, Result};
pub use lorentz::{causal_character, lorentz_angle, mcross, mdot, mnorm, CausalCharacter, LVec3};
