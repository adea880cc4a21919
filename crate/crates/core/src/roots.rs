//! Bracketed bisection.

use crate::error::{GeomError, Result};

/// Outcome of a bisection run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    pub root: f64,
    pub iterations: usize,
    /// Width of the final bracket.
    pub width: f64,
}

/// Bisect `f` on `[a, b]` until the bracket is narrower than `xtol` or
/// `max_iter` halvings have been done. `f(a)` and `f(b)` must differ in sign.
pub fn bisect<F>(f: F, mut a: f64, mut b: f64, xtol: f64, max_iter: usize) -> Result<Bisection>
where
    F: Fn(f64) -> f64,
{
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(Bisection {
            root: a,
            iterations: 0,
            width: 0.0,
        });
    }
    if fb == 0.0 {
        return Ok(Bisection {
            root: b,
            iterations: 0,
            width: 0.0,
        });
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(GeomError::NoSignChange { a, b, fa, fb });
    }
    let mut iterations = 0;
    while (b - a).abs() > xtol && iterations < max_iter {
        let mid = a + (b - a) / 2.0;
        if mid == a || mid == b {
            break;
        }
        let fm = f(mid);
        iterations += 1;
        if fm == 0.0 {
            return Ok(Bisection {
                root: mid,
                iterations,
                width: 0.0,
            });
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(Bisection {
        root: a + (b - a) / 2.0,
        iterations,
        width: (b - a).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14, 200).unwrap();
        assert!((r.root - 2f64.sqrt()).abs() < 1e-13);
        assert!(r.width <= 1e-14 || r.iterations == 200 || r.width < 1e-15);
    }

    #[test]
    fn rejects_missing_bracket() {
        assert!(matches!(
            bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 100),
            Err(GeomError::NoSignChange { .. })
        ));
    }

    #[test]
    fn respects_iteration_cap() {
        let r = bisect(|x| x - 0.3, 0.0, 1.0, 0.0, 5).unwrap();
        assert_eq!(r.iterations, 5);
        assert!((r.root - 0.3).abs() <= 1.0 / 32.0);
    }
}
