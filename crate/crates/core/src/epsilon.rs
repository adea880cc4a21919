//! Deformation parameter `ε`, with exact tokens for the values that matter.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// The critical parameter at which side and short diagonal have equal length.
pub const CRITICAL: f64 = PI / 12.0;

/// A value of `ε`, remembered as `num/den · π` when it was given that way.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Epsilon {
    value: f64,
    pi_fraction: Option<(i64, i64)>,
}

impl Epsilon {
    pub const ZERO: Epsilon = Epsilon {
        value: 0.0,
        pi_fraction: Some((0, 1)),
    };

    pub fn new(value: f64) -> Self {
        Self {
            value,
            pi_fraction: None,
        }
    }

    /// `num/den · π`, with the fraction stored in lowest terms.
    pub fn pi_frac(num: i64, den: i64) -> Self {
        let g = gcd(num, den).max(1) * den.signum();
        Self {
            value: PI * num as f64 / den as f64,
            pi_fraction: Some((num / g, den / g)),
        }
    }

    pub fn critical() -> Self {
        Self::pi_frac(1, 12)
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn pi_fraction(self) -> Option<(i64, i64)> {
        self.pi_fraction
    }

    /// True at `ε = π/12`: exactly for the symbolic token, within `1e-12` otherwise.
    pub fn is_critical(self) -> bool {
        match self.pi_fraction {
            Some((num, den)) => num * 12 == den,
            None => (self.value - CRITICAL).abs() < 1e-12,
        }
    }

    /// Accept `ε ∈ [0, π/4)`, the range on which the quadrilateral exists.
    pub fn check_quad_range(self) -> Result<f64> {
        if self.value >= 0.0 && self.value < PI / 4.0 {
            Ok(self.value)
        } else {
            Err(GeomError::EpsilonOutOfRange {
                eps: self.value,
                range: "[0, π/4)",
            })
        }
    }

    /// Accept `ε ∈ [0, π/12]`, the validated deformation range.
    pub fn check_validated(self) -> Result<f64> {
        if self.value >= 0.0 && (self.value <= CRITICAL || self.is_critical()) {
            Ok(self.value)
        } else {
            Err(GeomError::EpsilonOutOfRange {
                eps: self.value,
                range: "[0, π/12]",
            })
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl From<f64> for Epsilon {
    fn from(value: f64) -> Self {
        Epsilon::new(value)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_fraction {
            Some((0, _)) => write!(f, "0"),
            Some((1, den)) => write!(f, "pi/{den}"),
            Some((num, den)) => write!(f, "{num}pi/{den}"),
            None => write!(f, "{}", self.value),
        }
    }
}

impl FromStr for Epsilon {
    type Err = GeomError;

    /// Accepts decimals and the tokens `pi/D`, `Npi/D`, `N*pi/D`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('π', "pi").replace(' ', "");
        let bad = || GeomError::Domain(format!("cannot parse epsilon {s:?}"));
        if let Some(pos) = t.find("pi") {
            let num = t[..pos].trim_end_matches('*');
            let num: i64 = if num.is_empty() {
                1
            } else {
                num.parse().map_err(|_| bad())?
            };
            let rest = &t[pos + 2..];
            let den: i64 = match rest.strip_prefix('/') {
                Some(d) => d.parse().map_err(|_| bad())?,
                None if rest.is_empty() => 1,
                None => return Err(bad()),
            };
            if den <= 0 {
                return Err(bad());
            }
            return Ok(Epsilon::pi_frac(num, den));
        }
        let v: f64 = t.parse().map_err(|_| bad())?;
        if v == 0.0 {
            return Ok(Epsilon::ZERO);
        }
        Ok(Epsilon::new(v))
    }
}
