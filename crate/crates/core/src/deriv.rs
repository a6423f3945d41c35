//! Finite-difference differentiation.
//!
//! Two flavours live here: pointwise central stencils on a callable (used on
//! analytic expressions, step `h`), and fixed stencils on uniformly spaced
//! sample tables (used on integrated curves and on derived series).

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::expr::{Point, ScalarExpr, Var};
use crate::lorentz::LVec3;

/// Default pointwise step at unit scale.
pub const DEFAULT_H: f64 = 1e-4;

/// Values that finite-difference stencils can combine.
pub trait Linear: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl Linear for f64 {}
impl Linear for LVec3 {}

/// Central difference of order 0–3 with O(h²) accuracy, using 2, 3 and 4
/// stencil points for orders 1, 2 and 3.
pub fn central_diff<T, F>(f: F, x: f64, order: u8, h: f64) -> Result<T>
where
    T: Linear,
    F: Fn(f64) -> Result<T>,
{
    if !(h > 0.0) {
        return Err(Error::Validation(format!("step h must be positive, got {h}")));
    }
    match order {
        0 => f(x),
        1 => Ok((f(x + h)? - f(x - h)?) * (0.5 / h)),
        2 => {
            let mid = f(x)?;
            Ok((f(x + h)? - mid * 2.0 + f(x - h)?) * (1.0 / (h * h)))
        }
        3 => {
            let (p2, p1, m1, m2) = (f(x + 2.0 * h)?, f(x + h)?, f(x - h)?, f(x - 2.0 * h)?);
            Ok((p2 - p1 * 2.0 + m1 * 2.0 - m2) * (0.5 / (h * h * h)))
        }
        _ => Err(Error::Validation(format!("derivative order {order} not supported (max 3)"))),
    }
}

/// Derivative of `e` with respect to `var` at `point`.
pub fn eval_deriv(e: &ScalarExpr, point: Point, var: Var, order: u8, h: f64) -> Result<f64> {
    let x0 = point.get(var);
    central_diff(|x| e.eval(&point.with(var, x)), x0, order, h)
}

/// First derivative of a uniformly sampled table, fourth-order accurate
/// everywhere (five-point central stencil inside, one-sided at the ends).
pub fn grid_derivative<T: Linear>(values: &[T], spacing: f64) -> Result<Vec<T>> {
    let n = values.len();
    if n < 5 {
        return Err(Error::Validation(format!("need at least 5 samples to differentiate, got {n}")));
    }
    let k = 1.0 / (12.0 * spacing);
    let f = values;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let d = if i >= 2 && i + 2 < n {
            (f[i - 2] - f[i - 1] * 8.0 + f[i + 1] * 8.0 - f[i + 2]) * k
        } else if i == 0 {
            (f[0] * -25.0 + f[1] * 48.0 - f[2] * 36.0 + f[3] * 16.0 - f[4] * 3.0) * k
        } else if i == 1 {
            (f[0] * -3.0 - f[1] * 10.0 + f[2] * 18.0 - f[3] * 6.0 + f[4]) * k
        } else if i == n - 2 {
            (f[n - 1] * 3.0 + f[n - 2] * 10.0 - f[n - 3] * 18.0 + f[n - 4] * 6.0 - f[n - 5]) * k
        } else {
            (f[n - 1] * 25.0 - f[n - 2] * 48.0 + f[n - 3] * 36.0 - f[n - 4] * 16.0 + f[n - 5] * 3.0) * k
        };
        out.push(d);
    }
    Ok(out)
}

/// [`grid_derivative`] over a table with holes: each maximal run of `Some`
/// values of length ≥ 5 is differentiated on its own, everything else is `None`.
pub fn masked_grid_derivative<T: Linear>(values: &[Option<T>], spacing: f64) -> Vec<Option<T>> {
    let mut out = vec![None; values.len()];
    let mut i = 0;
    while i < values.len() {
        if values[i].is_none() {
            i += 1;
            continue;
        }
        let start = i;
        while i < values.len() && values[i].is_some() {
            i += 1;
        }
        let run: Vec<T> = values[start..i].iter().map(|v| v.unwrap()).collect();
        if let Ok(d) = grid_derivative(&run, spacing) {
            for (j, dj) in d.into_iter().enumerate() {
                out[start + j] = Some(dj);
            }
        }
    }
    out
}
