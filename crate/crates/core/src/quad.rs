//! The equilateral quadrilateral `Q_ε` ("square") with alternating angles
//! `π/4 + ε` and `π/4 − ε`.
//!
//! Vertices are labelled `A, B, C, D` counterclockwise with the wide angle
//! `π/4 + ε` at `A` and `C`. The short diagonal `AC` has length `x_ε`, the side
//! length is `l_ε`, and `y_ε` is the common width between opposite sides.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::epsilon::Epsilon;
use crate::error::Result;
use crate::hyp::{
    self, angle_at, distance, foot_of_perpendicular, realize_triangle, stable_acosh, Angle,
    DiskPoint, HypLength, Isometry,
};

fn checked(eps: f64) -> Result<f64> {
    Epsilon::new(eps).check_quad_range()
}

/// Side length `l_ε` from the closed form
/// `cosh l = (cos(π/8 − ε/2) + cos(π/8 − ε/2) cos(π/4 + ε)) / (sin(π/8 − ε/2) sin(π/4 + ε))`.
pub fn side_length_formula(eps: f64) -> Result<HypLength> {
    let eps = checked(eps)?;
    let half = PI / 8.0 - eps / 2.0;
    let wide = PI / 4.0 + eps;
    let cosh_l = (half.cos() + half.cos() * wide.cos()) / (half.sin() * wide.sin());
    HypLength::new(stable_acosh(cosh_l))
}

/// Short diagonal `x_ε` from the closed form
/// `cosh x = (cos(π/4 − ε) + cos²(π/8 + ε/2)) / sin²(π/8 + ε/2)`.
pub fn diagonal_length_formula(eps: f64) -> Result<HypLength> {
    let eps = checked(eps)?;
    let half = PI / 8.0 + eps / 2.0;
    let cosh_x = ((PI / 4.0 - eps).cos() + half.cos().powi(2)) / half.sin().powi(2);
    HypLength::new(stable_acosh(cosh_x))
}

/// Width `y_ε` between opposite sides, `cosh y = √2 cos ε + 1`.
pub fn perpendicular_width(eps: f64) -> Result<HypLength> {
    let eps = checked(eps)?;
    HypLength::new(stable_acosh(SQRT_2 * eps.cos() + 1.0))
}

/// `d/dε cosh l_ε = (sin(π/4 + ε) − sin(π/4 − ε)) / (4 sin²(π/8 − ε/2) sin²(π/8 + ε/2))`.
///
/// Writing `cosh l_ε = cot(π/8 − ε/2) cot(π/8 + ε/2)` and differentiating gives
/// this form. Vanishes at `ε = 0` and is positive on `(0, π/4)`.
pub fn cosh_side_derivative(eps: f64) -> f64 {
    let (s1, s2) = ((PI / 4.0 + eps).sin(), (PI / 4.0 - eps).sin());
    0.25 * (s1 - s2) / ((PI / 8.0 - eps / 2.0).sin().powi(2) * (PI / 8.0 + eps / 2.0).sin().powi(2))
}

/// `d/dε cosh x_ε`.
pub fn cosh_diagonal_derivative(eps: f64) -> f64 {
    -SQRT_2 * (PI / 8.0 - eps / 2.0).cos() / (PI / 8.0 + eps / 2.0).sin().powi(3)
}

/// A realized square with its measured invariants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquareLayout {
    pub epsilon: f64,
    pub a: DiskPoint,
    pub b: DiskPoint,
    pub c: DiskPoint,
    pub d: DiskPoint,
    pub side_length: HypLength,
    /// `AC`, joining the `π/4 + ε` corners.
    pub short_diagonal: HypLength,
    /// `BD`, joining the `π/4 − ε` corners.
    pub long_diagonal: HypLength,
    pub width: HypLength,
    /// Intersection of the diagonals.
    pub center: DiskPoint,
}

/// Common perpendiculars between opposite sides, dropped from the center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Perpendiculars {
    /// Feet on `AB` and `CD`.
    pub m: DiskPoint,
    pub n: DiskPoint,
    /// Feet on `DA` and `BC`.
    pub p: DiskPoint,
    pub q: DiskPoint,
    pub mn_length: f64,
    pub pq_length: f64,
    /// `∠MON` and `∠PON'`; both equal π when the feet are collinear with the center.
    pub angle_mon: f64,
    pub angle_poq: f64,
    /// Largest deviation from π/2 of the angle each perpendicular makes with its side.
    pub max_right_angle_error: f64,
}

impl SquareLayout {
    pub fn vertices(&self) -> [DiskPoint; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Interior angles at `A, B, C, D`.
    pub fn measured_angles(&self) -> [f64; 4] {
        let v = self.vertices();
        std::array::from_fn(|i| angle_at(v[i], v[(i + 3) % 4], v[(i + 1) % 4]))
    }

    /// Side lengths `AB, BC, CD, DA`.
    pub fn measured_sides(&self) -> [f64; 4] {
        let v = self.vertices();
        std::array::from_fn(|i| distance(v[i], v[(i + 1) % 4]).value())
    }

    /// Area from the angle defect of the quadrilateral.
    pub fn area(&self) -> f64 {
        2.0 * PI - self.measured_angles().iter().sum::<f64>()
    }

    pub fn transformed(&self, iso: &Isometry) -> SquareLayout {
        SquareLayout {
            a: iso.apply(self.a),
            b: iso.apply(self.b),
            c: iso.apply(self.c),
            d: iso.apply(self.d),
            center: iso.apply(self.center),
            ..*self
        }
    }

    /// Pairwise distance matrix of `A, B, C, D, O`.
    pub fn distance_matrix(&self) -> [[f64; 5]; 5] {
        let pts = [self.a, self.b, self.c, self.d, self.center];
        std::array::from_fn(|i| std::array::from_fn(|j| distance(pts[i], pts[j]).value()))
    }

    pub fn perpendiculars(&self) -> Perpendiculars {
        let o = self.center;
        let m = foot_of_perpendicular(o, self.a, self.b);
        let n = foot_of_perpendicular(o, self.c, self.d);
        let p = foot_of_perpendicular(o, self.d, self.a);
        let q = foot_of_perpendicular(o, self.b, self.c);
        let right = |foot: DiskPoint, end: DiskPoint, other: DiskPoint| {
            // Only the angle at a foot distinct from the center is meaningful.
            (angle_at(foot, other, end) - PI / 2.0).abs()
        };
        let max_right_angle_error = [
            right(m, self.a, n),
            right(n, self.c, m),
            right(p, self.d, q),
            right(q, self.b, p),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        Perpendiculars {
            m,
            n,
            p,
            q,
            mn_length: distance(m, n).value(),
            pq_length: distance(p, q).value(),
            angle_mon: angle_at(o, m, n),
            angle_poq: angle_at(o, p, q),
            max_right_angle_error,
        }
    }
}

/// Build `Q_ε` in canonical position: center at the origin, `C` on the
/// positive real axis, `A` on the negative one, `D` above.
pub fn build_square(eps: f64) -> Result<SquareLayout> {
    let raw = build_square_with_placement(eps, &Isometry::IDENTITY)?;
    let to_center = Isometry::to_origin(raw.center);
    let c = to_center.apply(raw.c);
    let normalize = Isometry::rotation(-c.y.atan2(c.x)).compose(&to_center);
    let mut sq = raw.transformed(&normalize);
    // Snap the center; it is the origin up to rounding.
    sq.center = DiskPoint::ORIGIN;
    Ok(sq)
}

/// Build `Q_ε` from the triangle with angles `(π/4 + ε, π/8 − ε/2, π/8 − ε/2)`
/// placed by `placement`, doubled across the side opposite its wide angle.
pub fn build_square_with_placement(eps: f64, placement: &Isometry) -> Result<SquareLayout> {
    let eps = checked(eps)?;
    let wide = Angle::new(PI / 4.0 + eps)?;
    let narrow = Angle::new(PI / 8.0 - eps / 2.0)?;
    let tri = realize_triangle(wide, narrow, narrow)?.transformed(placement);
    let [a, b, d] = tri.vertices;
    let c = Isometry::reflect_across_geodesic(b, d).apply(a);
    let center = match hyp::segment_parameters(a, c, b, d) {
        Some((t, _)) => hyp::klein_lerp(a, c, t),
        None => unreachable!("diagonals of a convex quadrilateral cross"),
    };
    let probe = SquareLayout {
        epsilon: eps,
        a,
        b,
        c,
        d,
        side_length: HypLength::new(0.0)?,
        short_diagonal: distance(a, c),
        long_diagonal: distance(b, d),
        width: HypLength::new(0.0)?,
        center,
    };
    let sides = probe.measured_sides();
    let perp = probe.perpendiculars();
    Ok(SquareLayout {
        side_length: HypLength::new(sides.iter().sum::<f64>() / 4.0)?,
        width: HypLength::new(perp.mn_length)?,
        ..probe
    })
}
