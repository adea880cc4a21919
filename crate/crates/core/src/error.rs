use thiserror::Error;

/// Errors raised by the geometric constructions and checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a hyperbolic triangle: angle sum {sum} must be < π")]
    NotHyperbolic { sum: f64 },

    #[error("point ({x}, {y}) lies outside the open unit disk")]
    OutsideDisk { x: f64, y: f64 },

    #[error("epsilon {eps} outside {range}")]
    EpsilonOutOfRange { eps: f64, range: &'static str },

    #[error("inadmissible grid {m}x{n}: need m = 2k with k ≥ 2, n ≥ 4")]
    InadmissibleGrid { m: usize, n: usize },

    #[error("(p, q) = ({p}, {q}) is not a primitive class")]
    NotPrimitive { p: i64, q: i64 },

    #[error("path not in general position: {0}")]
    Degenerate(String),

    #[error("root not bracketed on [{a}, {b}]: f(a) = {fa}, f(b) = {fb}")]
    NoSignChange { a: f64, b: f64, fa: f64, fb: f64 },
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
