//! Hyperbolic trigonometry and the unit-disk model.
//!
//! Every coordinate exposed here is a point of the Poincaré disk. Isometries
//! are stored as `SL(2, R)` matrices together with an orientation flag and act
//! on the disk through the Cayley transform; internally the action is carried
//! out with the equivalent `SU(1, 1)` coefficients, which stay well conditioned
//! near the boundary circle.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Tolerances used by identity checks and by constructed-geometry checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Closed-form identities, e.g. `cosh c = cosh a cosh b`.
    pub identity: f64,
    /// Measurements taken from constructed coordinates.
    pub geometry: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            identity: 1e-12,
            geometry: 1e-9,
        }
    }
}

/// `acosh` that stays accurate when the argument is close to 1.
///
/// Arguments in `[1 - 1e-12, 1)` are rounding noise and clamp to zero.
pub fn stable_acosh(x: f64) -> f64 {
    let u = x - 1.0;
    if u <= 0.0 {
        return if u > -1e-12 { 0.0 } else { f64::NAN };
    }
    (u + (u * (u + 2.0)).sqrt()).ln_1p()
}

/// An angle in radians, optionally remembered as an exact rational multiple of π.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Angle {
    value: f64,
    pi_fraction: Option<(i64, i64)>,
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Angle {
    /// An interior angle, `0 < value < π`.
    pub fn new(value: f64) -> Result<Self> {
        if !(value > 0.0 && value < PI) {
            return Err(GeomError::Domain(format!("angle {value} not in (0, π)")));
        }
        Ok(Self {
            value,
            pi_fraction: None,
        })
    }

    /// The angle `num/den · π`.
    pub fn pi_frac(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(GeomError::Domain("zero denominator".into()));
        }
        let mut a = Self::new(PI * num as f64 / den as f64)?;
        a.pi_fraction = Some((num, den));
        Ok(a)
    }

    pub fn radians(self) -> f64 {
        self.value
    }

    pub fn pi_fraction(self) -> Option<(i64, i64)> {
        self.pi_fraction
    }
}

/// A hyperbolic length (curvature −1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct HypLength(f64);

impl HypLength {
    pub fn new(value: f64) -> Result<Self> {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(GeomError::Domain(format!(
                "length {value} must be finite and ≥ 0"
            )));
        }
        Ok(Self(value))
    }

    /// A side length, which must be strictly positive.
    pub fn positive(value: f64) -> Result<Self> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(GeomError::Domain(format!(
                "side length {value} must be > 0"
            )));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint {
    pub x: f64,
    pub y: f64,
}

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x * x + y * y < 1.0) {
            return Err(GeomError::OutsideDisk { x, y });
        }
        Ok(Self { x, y })
    }

    /// The point at hyperbolic distance `dist` from the origin in direction `theta`.
    pub fn polar(dist: f64, theta: f64) -> Self {
        let r = (dist / 2.0).tanh();
        Self {
            x: r * theta.cos(),
            y: r * theta.sin(),
        }
    }

    pub(crate) fn from_complex(z: Complex64) -> Self {
        Self { x: z.re, y: z.im }
    }

    pub(crate) fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn norm_sqr(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Coordinates of the same point in the Klein model, where geodesics are chords.
    pub fn to_klein(self) -> [f64; 2] {
        let s = 2.0 / (1.0 + self.norm_sqr());
        [self.x * s, self.y * s]
    }

    pub fn from_klein(k: [f64; 2]) -> Self {
        let r2 = k[0] * k[0] + k[1] * k[1];
        let s = 1.0 / (1.0 + (1.0 - r2).max(0.0).sqrt());
        Self {
            x: k[0] * s,
            y: k[1] * s,
        }
    }
}

/// Hyperbolic distance between two disk points.
pub fn distance(p: DiskPoint, q: DiskPoint) -> HypLength {
    let (zp, zq) = (p.to_complex(), q.to_complex());
    let num = (zp - zq).norm();
    let den = (Complex64::new(1.0, 0.0) - zp.conj() * zq).norm();
    let r = (num / den).min(1.0);
    HypLength(2.0 * r.atanh())
}

/// Interior angle at `vertex` between the geodesics towards `a` and `b`, in `[0, π]`.
pub fn angle_at(vertex: DiskPoint, a: DiskPoint, b: DiskPoint) -> f64 {
    let t = Isometry::to_origin(vertex);
    let (u, v) = (t.apply(a).to_complex(), t.apply(b).to_complex());
    let cross = u.re * v.im - u.im * v.re;
    let dot = u.re * v.re + u.im * v.im;
    cross.abs().atan2(dot)
}

/// Signed turning angle from the direction of `a` to the direction of `b`
/// as seen from `vertex`, in `(-π, π]`.
pub fn signed_angle_at(vertex: DiskPoint, a: DiskPoint, b: DiskPoint) -> f64 {
    let t = Isometry::to_origin(vertex);
    let (u, v) = (t.apply(a).to_complex(), t.apply(b).to_complex());
    (u.re * v.im - u.im * v.re).atan2(u.re * v.re + u.im * v.im)
}

/// Foot of the perpendicular dropped from `p` onto the complete geodesic through `a` and `b`.
pub fn foot_of_perpendicular(p: DiskPoint, a: DiskPoint, b: DiskPoint) -> DiskPoint {
    // Moving `p` to the origin makes the hyperbolic perpendicular a Euclidean
    // one in Klein coordinates.
    let t = Isometry::to_origin(p);
    let ka = t.apply(a).to_klein();
    let kb = t.apply(b).to_klein();
    let d = [kb[0] - ka[0], kb[1] - ka[1]];
    let s = -(ka[0] * d[0] + ka[1] * d[1]) / (d[0] * d[0] + d[1] * d[1]);
    let foot = DiskPoint::from_klein([ka[0] + s * d[0], ka[1] + s * d[1]]);
    t.inverse().apply(foot)
}

/// Intersection of the geodesic segments `[a, b]` and `[c, d]`, as the pair of
/// Klein-model segment parameters `(s, t)` with both in `[0, 1]` when the
/// segments meet. `None` for parallel chords.
pub fn segment_parameters(
    a: DiskPoint,
    b: DiskPoint,
    c: DiskPoint,
    d: DiskPoint,
) -> Option<(f64, f64)> {
    let (ka, kb, kc, kd) = (a.to_klein(), b.to_klein(), c.to_klein(), d.to_klein());
    let r = [kb[0] - ka[0], kb[1] - ka[1]];
    let s = [kd[0] - kc[0], kd[1] - kc[1]];
    let denom = r[0] * s[1] - r[1] * s[0];
    if denom.abs() < 1e-300 {
        return None;
    }
    let q = [kc[0] - ka[0], kc[1] - ka[1]];
    let t_ab = (q[0] * s[1] - q[1] * s[0]) / denom;
    let t_cd = (q[0] * r[1] - q[1] * r[0]) / denom;
    Some((t_ab, t_cd))
}

/// Point at Klein-model parameter `t` on the chord from `a` to `b`.
pub fn klein_lerp(a: DiskPoint, b: DiskPoint, t: f64) -> DiskPoint {
    let (ka, kb) = (a.to_klein(), b.to_klein());
    DiskPoint::from_klein([ka[0] + t * (kb[0] - ka[0]), ka[1] + t * (kb[1] - ka[1])])
}

/// An isometry of the disk: an `SL(2, R)` matrix acting through the Cayley
/// transform, preceded by complex conjugation when `reversing` is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    matrix: [[f64; 2]; 2],
    reversing: bool,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        matrix: [[1.0, 0.0], [0.0, 1.0]],
        reversing: false,
    };

    /// Wraps a real matrix; its determinant must be 1 within `tol`.
    pub fn from_matrix(matrix: [[f64; 2]; 2], reversing: bool, tol: f64) -> Result<Self> {
        let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
        if (det - 1.0).abs() > tol {
            return Err(GeomError::Domain(format!("determinant {det} is not 1")));
        }
        Ok(Self { matrix, reversing })
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        self.matrix
    }

    pub fn is_reversing(&self) -> bool {
        self.reversing
    }

    pub fn det(&self) -> f64 {
        let m = self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Build from the disk action `z ↦ (αz + β) / (β̄z + ᾱ)` with `|α|² − |β|² = 1`.
    fn from_su11(alpha: Complex64, beta: Complex64, reversing: bool) -> Self {
        let n = (alpha.norm_sqr() - beta.norm_sqr()).sqrt();
        let (alpha, beta) = (alpha / n, beta / n);
        let matrix = [
            [alpha.re + beta.re, alpha.im - beta.im],
            [-alpha.im - beta.im, alpha.re - beta.re],
        ];
        Self { matrix, reversing }
    }

    fn su11(&self) -> (Complex64, Complex64) {
        let [[a, b], [c, d]] = self.matrix;
        (
            Complex64::new((a + d) / 2.0, (b - c) / 2.0),
            Complex64::new((a - d) / 2.0, -(b + c) / 2.0),
        )
    }

    /// Rotation about the origin by `theta`.
    pub fn rotation(theta: f64) -> Self {
        Self::from_su11(
            Complex64::from_polar(1.0, theta / 2.0),
            Complex64::new(0.0, 0.0),
            false,
        )
    }

    /// Translation by hyperbolic distance `d` along the real diameter.
    pub fn translation_x(d: f64) -> Self {
        Self::from_su11(
            Complex64::new((d / 2.0).cosh(), 0.0),
            Complex64::new((d / 2.0).sinh(), 0.0),
            false,
        )
    }

    /// Complex conjugation, the reflection across the real diameter.
    pub fn conjugation() -> Self {
        Self {
            reversing: true,
            ..Self::IDENTITY
        }
    }

    /// Orientation-preserving isometry sending `p` to the origin and fixing the
    /// direction of the diameter through `p`.
    pub fn to_origin(p: DiskPoint) -> Self {
        let z = p.to_complex();
        Self::from_su11(Complex64::new(1.0, 0.0), -z, false)
    }

    /// Orientation-preserving isometry with `p1 ↦ q1` and `p2` sent onto the
    /// geodesic ray from `q1` through `q2`. When `d(p1, p2) = d(q1, q2)` it maps
    /// `p2 ↦ q2` exactly.
    pub fn from_point_pairs(p1: DiskPoint, p2: DiskPoint, q1: DiskPoint, q2: DiskPoint) -> Self {
        let tp = Isometry::to_origin(p1);
        let tq = Isometry::to_origin(q1);
        let up = tp.apply(p2);
        let uq = tq.apply(q2);
        let rot = Isometry::rotation(uq.y.atan2(uq.x) - up.y.atan2(up.x));
        tq.inverse().compose(&rot).compose(&tp)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let m1 = self.matrix;
        let m2 = if self.reversing {
            let m = other.matrix;
            [[m[0][0], -m[0][1]], [-m[1][0], m[1][1]]]
        } else {
            other.matrix
        };
        let mut m = [[0.0; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = m1[i][0] * m2[0][j] + m1[i][1] * m2[1][j];
            }
        }
        Isometry {
            matrix: m,
            reversing: self.reversing ^ other.reversing,
        }
    }

    pub fn inverse(&self) -> Isometry {
        let [[a, b], [c, d]] = self.matrix;
        let inv = [[d, -b], [-c, a]];
        if self.reversing {
            // (M J)^{-1} = J M^{-1} = (J M^{-1} J) J
            Isometry {
                matrix: [[inv[0][0], -inv[0][1]], [-inv[1][0], inv[1][1]]],
                reversing: true,
            }
        } else {
            Isometry {
                matrix: inv,
                reversing: false,
            }
        }
    }

    pub fn apply(&self, p: DiskPoint) -> DiskPoint {
        let (alpha, beta) = self.su11();
        let mut z = p.to_complex();
        if self.reversing {
            z = z.conj();
        }
        let w = (alpha * z + beta) / (beta.conj() * z + alpha.conj());
        DiskPoint::from_complex(w)
    }

    /// Reflection across the complete geodesic through `p` and `q`.
    pub fn reflect_across_geodesic(p: DiskPoint, q: DiskPoint) -> Isometry {
        let frame = Isometry::to_origin(p);
        let u = frame.apply(q);
        let normalize = Isometry::rotation(-u.y.atan2(u.x)).compose(&frame);
        normalize
            .inverse()
            .compose(&Isometry::conjugation())
            .compose(&normalize)
    }

    /// Largest displacement of the sample points, a distance to the identity.
    pub fn max_displacement(&self, other: &Isometry, samples: &[DiskPoint]) -> f64 {
        samples
            .iter()
            .map(|&s| distance(self.apply(s), other.apply(s)).value())
            .fold(0.0, f64::max)
    }
}

fn check_side(a: HypLength) -> Result<f64> {
    if a.value() > 0.0 {
        Ok(a.value())
    } else {
        Err(GeomError::Domain(format!("side {} must be > 0", a.value())))
    }
}

/// Third side from two sides and their included angle: hyperbolic law of cosines.
pub fn law_of_cosines_side(a: HypLength, b: HypLength, gamma: Angle) -> Result<HypLength> {
    let (a, b) = (check_side(a)?, check_side(b)?);
    let g = gamma.radians();
    // cosh c − 1 = cosh(a − b) − 1 + sinh a sinh b (1 − cos γ), which avoids
    // cancellation for small included angles.
    let excess =
        2.0 * ((a - b) / 2.0).sinh().powi(2) + a.sinh() * b.sinh() * 2.0 * (g / 2.0).sin().powi(2);
    HypLength::new(stable_acosh(1.0 + excess))
}

/// The side opposite `gamma`, joining the vertices with angles `alpha` and `beta`.
pub fn side_from_angles(alpha: Angle, beta: Angle, gamma: Angle) -> Result<HypLength> {
    let (a, b, g) = (alpha.radians(), beta.radians(), gamma.radians());
    let sum = a + b + g;
    if sum >= PI - 1e-15 {
        return Err(GeomError::NotHyperbolic { sum });
    }
    let cosh_c = (g.cos() + a.cos() * b.cos()) / (a.sin() * b.sin());
    HypLength::positive(stable_acosh(cosh_c))
}

/// Hypotenuse of a right triangle with legs `a` and `b`.
pub fn right_hypotenuse(a: HypLength, b: HypLength) -> Result<HypLength> {
    let (a, b) = (check_side(a)?, check_side(b)?);
    // cosh a cosh b − 1 written without cancellation.
    let excess = 2.0 * (a / 2.0).sinh().powi(2) * b.cosh() + 2.0 * (b / 2.0).sinh().powi(2);
    HypLength::new(stable_acosh(1.0 + excess))
}

fn acute(angle: Angle) -> Result<f64> {
    let v = angle.radians();
    if v < PI / 2.0 {
        Ok(v)
    } else {
        Err(GeomError::Domain(format!("angle {v} must be acute")))
    }
}

/// Leg opposite the acute angle `alpha` in a right triangle with hypotenuse `c`.
pub fn right_opposite(alpha: Angle, c: HypLength) -> Result<HypLength> {
    let alpha = acute(alpha)?;
    let c = check_side(c)?;
    HypLength::new((alpha.sin() * c.sinh()).asinh())
}

/// Leg opposite the acute angle `beta`, given the other leg `b` adjacent to it.
pub fn right_adjacent(beta: Angle, b: HypLength) -> Result<HypLength> {
    let beta = acute(beta)?;
    let b = check_side(b)?;
    HypLength::new((b.tanh() / beta.tan()).asinh())
}

/// A triangle realized in the disk. `sides[i]` is opposite `vertices[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleSpec {
    pub angles: [Angle; 3],
    pub sides: [HypLength; 3],
    pub vertices: [DiskPoint; 3],
}

impl TriangleSpec {
    /// Area from the angle defect.
    pub fn area(&self) -> f64 {
        PI - self.angles.iter().map(|a| a.radians()).sum::<f64>()
    }

    /// Pairwise distances between the realized vertices, indexed like `sides`.
    pub fn measured_sides(&self) -> [f64; 3] {
        let v = self.vertices;
        [
            distance(v[1], v[2]).value(),
            distance(v[2], v[0]).value(),
            distance(v[0], v[1]).value(),
        ]
    }

    pub fn measured_angles(&self) -> [f64; 3] {
        let v = self.vertices;
        [
            angle_at(v[0], v[1], v[2]),
            angle_at(v[1], v[2], v[0]),
            angle_at(v[2], v[0], v[1]),
        ]
    }

    pub fn transformed(&self, iso: &Isometry) -> TriangleSpec {
        TriangleSpec {
            vertices: self.vertices.map(|p| iso.apply(p)),
            ..*self
        }
    }
}

/// Realize the triangle with the given angles: the first vertex at the origin,
/// the second on the positive real axis, the third in the upper half.
pub fn realize_triangle(alpha: Angle, beta: Angle, gamma: Angle) -> Result<TriangleSpec> {
    let side_a = side_from_angles(beta, gamma, alpha)?;
    let side_b = side_from_angles(alpha, gamma, beta)?;
    let side_c = side_from_angles(alpha, beta, gamma)?;
    let vertices = [
        DiskPoint::ORIGIN,
        DiskPoint::polar(side_c.value(), 0.0),
        DiskPoint::polar(side_b.value(), alpha.radians()),
    ];
    Ok(TriangleSpec {
        angles: [alpha, beta, gamma],
        sides: [side_a, side_b, side_c],
        vertices,
    })
}
