//! The deformation `ε ↦ S_g(ε)`: side and diagonal lengths, their derivatives,
//! the crossover `ε₀` and the systole along the path.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::epsilon::{Epsilon, CRITICAL};
use crate::error::{GeomError, Result};
use crate::quad;
use crate::roots::{bisect, Bisection};

/// Lengths and derivatives at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformationSample {
    pub epsilon: f64,
    /// Side length `l_ε`.
    pub l: f64,
    /// Short diagonal `x_ε`.
    pub x: f64,
    /// Width between opposite sides `y_ε`.
    pub y: f64,
    /// `2 min(l, x)`.
    pub sys: f64,
    pub dl_deps: f64,
    pub dx_deps: f64,
    /// False when `ε` lies beyond `π/12`, where `sys` is not certified.
    pub validated: bool,
}

fn sample_inner(eps: f64, validated: bool) -> Result<DeformationSample> {
    let l = quad::side_length_formula(eps)?.value();
    let x = quad::diagonal_length_formula(eps)?.value();
    let y = quad::perpendicular_width(eps)?.value();
    Ok(DeformationSample {
        epsilon: eps,
        l,
        x,
        y,
        sys: 2.0 * l.min(x),
        dl_deps: quad::cosh_side_derivative(eps) / l.sinh(),
        dx_deps: quad::cosh_diagonal_derivative(eps) / x.sinh(),
        validated,
    })
}

/// Sample the path at `ε ∈ [0, π/12]`.
pub fn sample(eps: impl Into<Epsilon>) -> Result<DeformationSample> {
    let eps = eps.into().check_validated()?;
    sample_inner(eps, true)
}

/// Sample at any `ε ∈ [0, π/4)`. Points past `π/12` are flagged `validated = false`.
pub fn sample_unvalidated(eps: impl Into<Epsilon>) -> Result<DeformationSample> {
    let e = eps.into();
    let value = e.check_quad_range()?;
    sample_inner(value, e.check_validated().is_ok())
}

/// Bracketed root of `l_ε − x_ε` on `(0, π/4)`.
pub fn find_epsilon0_detailed() -> Result<Bisection> {
    let gap = |eps: f64| {
        let l = quad::side_length_formula(eps)
            .map(|v| v.value())
            .unwrap_or(f64::NAN);
        let x = quad::diagonal_length_formula(eps)
            .map(|v| v.value())
            .unwrap_or(f64::NAN);
        l - x
    };
    bisect(gap, 0.0, PI / 4.0 - 1e-9, 1e-12, 200)
}

/// The parameter at which side and short diagonal have the same length.
pub fn find_epsilon0() -> f64 {
    find_epsilon0_detailed()
        .expect("l_ε − x_ε changes sign on (0, π/4)")
        .root
}

/// Residual of `π/8 + ε/2 = π/4 − ε`, the angle condition for `l_ε = x_ε`.
pub fn crossover_angle_residual(eps: f64) -> f64 {
    (PI / 8.0 + eps / 2.0) - (PI / 4.0 - eps)
}

/// Samples over a strictly increasing grid inside `[0, π/12]`.
pub fn systole_profile(grid: &[f64]) -> Result<Vec<DeformationSample>> {
    if let Some(w) = grid.windows(2).find(|w| !(w[0] < w[1])) {
        return Err(GeomError::Domain(format!(
            "grid must be strictly increasing, got {} then {}",
            w[0], w[1]
        )));
    }
    grid.iter().map(|&e| sample(snap_critical(e))).collect()
}

/// Grid points within rounding of `π/12` are treated as the critical value.
fn snap_critical(e: f64) -> Epsilon {
    if (e - CRITICAL).abs() < 1e-12 {
        Epsilon::critical()
    } else {
        Epsilon::new(e)
    }
}

/// `n` evenly spaced points covering `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

pub fn is_strictly_increasing(values: impl IntoIterator<Item = f64>) -> bool {
    let v: Vec<f64> = values.into_iter().collect();
    v.windows(2).all(|w| w[0] < w[1])
}
