//! Bordered surfaces `X(a)`: each equilateral `(6,6,6)` triangle of
//! `S_g(π/12)` is replaced by a right-angled hexagon whose alternating sides
//! have length `a`. The short sides around a vertex of the tessellation close
//! up into a boundary geodesic of length `N·a`, and as `a → 0` the boundaries
//! degenerate to cusps.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::hyp::{
    angle_at, distance, klein_lerp, segment_parameters, stable_acosh, DiskPoint, HypLength,
    Isometry,
};
use crate::quad;
use crate::surface::{FaceType, SurfaceDescriptor};

/// A right-angled hexagon with sides `a, t, a, t, a, t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HexagonSpec {
    pub a: HypLength,
    pub t: HypLength,
    /// Counterclockwise; the side from vertex `i` to `i + 1` has length `a` for even `i`.
    pub vertices: [DiskPoint; 6],
}

/// `cosh t = cosh a / (cosh a − 1)`: the remaining sides of a right-angled
/// hexagon whose alternating sides all equal `a`.
pub fn opposite_side(a: f64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(GeomError::Domain(format!(
            "hexagon side a = {a} must be > 0"
        )));
    }
    let excess = 2.0 * (a / 2.0).sinh().powi(2); // cosh a − 1
                                                 // cosh t − 1 = 1 / (cosh a − 1)
    Ok(stable_acosh(1.0 + 1.0 / excess))
}

impl HexagonSpec {
    pub fn measured_sides(&self) -> [f64; 6] {
        let v = self.vertices;
        std::array::from_fn(|i| distance(v[i], v[(i + 1) % 6]).value())
    }

    pub fn measured_angles(&self) -> [f64; 6] {
        let v = self.vertices;
        std::array::from_fn(|i| angle_at(v[i], v[(i + 5) % 6], v[(i + 1) % 6]))
    }

    /// `(k − 2)π` minus the angle sum; π for every right-angled hexagon.
    pub fn area(&self) -> f64 {
        4.0 * PI - self.measured_angles().iter().sum::<f64>()
    }

    /// Residual of `cosh t sinh² a = cosh² a + cosh a`.
    pub fn identity_residual(&self) -> f64 {
        let (a, t) = (self.a.value(), self.t.value());
        (t.cosh() * a.sinh().powi(2) - a.cosh().powi(2) - a.cosh()).abs()
            / (a.cosh().powi(2) + a.cosh())
    }
}

/// Solve for `t` and realize the hexagon in the disk, centered at the origin.
pub fn hexagon_solve(a: f64) -> Result<HexagonSpec> {
    let t = opposite_side(a)?;
    // Walk the boundary turning left by π/2 at each corner.
    let mut frame = Isometry::IDENTITY;
    let mut raw = [DiskPoint::ORIGIN; 6];
    for (i, slot) in raw.iter_mut().enumerate() {
        *slot = frame.apply(DiskPoint::ORIGIN);
        let side = if i % 2 == 0 { a } else { t };
        frame = frame
            .compose(&Isometry::translation_x(side))
            .compose(&Isometry::rotation(PI / 2.0));
    }
    // Each line through the midpoints of opposite sides is a mirror of the
    // hexagon; two of them meet at the center.
    let mid = |p: DiskPoint, q: DiskPoint| {
        let to = Isometry::to_origin(p);
        let d = distance(p, q).value();
        let dir = to.apply(q);
        to.inverse()
            .apply(DiskPoint::polar(d / 2.0, dir.y.atan2(dir.x)))
    };
    let (m0, m3) = (mid(raw[0], raw[1]), mid(raw[3], raw[4]));
    let (m2, m5) = (mid(raw[2], raw[3]), mid(raw[5], raw[0]));
    let center = match segment_parameters(m0, m3, m2, m5) {
        Some((s, _)) => klein_lerp(m0, m3, s),
        None => unreachable!("mirror axes of a hexagon intersect"),
    };
    let recenter = Isometry::to_origin(center);
    Ok(HexagonSpec {
        a: HypLength::positive(a)?,
        t: HypLength::positive(t)?,
        vertices: raw.map(|p| recenter.apply(p)),
    })
}

/// Number of equilateral triangles around each vertex of the tessellation of
/// `S_g(ε)` by its systolic geodesics: full angle over the triangle angle.
pub fn vertex_valence(eps: f64) -> Result<usize> {
    let sq = quad::build_square(eps)?;
    let corner = angle_at(sq.a, sq.b, sq.c);
    let n = 2.0 * PI / corner;
    if (n - n.round()).abs() > 1e-9 {
        return Err(GeomError::Domain(format!(
            "triangle angle {corner} does not divide 2π"
        )));
    }
    Ok(n.round() as usize)
}

/// The bordered surface `X(a)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundedSurfaceDescriptor {
    pub base: SurfaceDescriptor,
    pub a: f64,
    pub boundary_count: usize,
    /// Triangles (hence hexagons) around each boundary component.
    pub valence: usize,
    pub boundary_length: f64,
    pub hexagon_count: usize,
    pub hexagon: HexagonSpec,
    /// `hexagon_count · π`.
    pub hexagon_area_total: f64,
    /// Gauss–Bonnet area of a genus-`g` surface with geodesic boundary,
    /// `2π(2g − 2 + boundary_count)`; agrees with `hexagon_area_total`.
    pub gauss_bonnet_area: f64,
}

/// Replace each triangle of `base` by `H_a`.
pub fn build_xa(base: &SurfaceDescriptor, a: f64) -> Result<BoundedSurfaceDescriptor> {
    if base.decomposition != FaceType::Triangles666 {
        return Err(GeomError::Domain(
            "X(a) needs the equilateral triangulation of the critical surface".into(),
        ));
    }
    let hexagon = hexagon_solve(a)?;
    let valence = vertex_valence(base.epsilon.value())?;
    let hexagon_count = base.lifted_faces;
    Ok(BoundedSurfaceDescriptor {
        base: base.clone(),
        a,
        boundary_count: base.branch_points,
        valence,
        boundary_length: valence as f64 * a,
        hexagon_count,
        hexagon,
        hexagon_area_total: hexagon_count as f64 * PI,
        gauss_bonnet_area: 2.0 * PI * (2 * base.genus - 2 + base.branch_points) as f64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CuspSample {
    pub a: f64,
    pub t: f64,
    pub boundary_length: f64,
    pub hexagon_area: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuspReport {
    pub samples: Vec<CuspSample>,
    pub t_increasing: bool,
    pub lengths_decreasing: bool,
    pub area_constant: bool,
    /// Area of the closed base and of the bordered surface, informational.
    pub base_area: f64,
    pub hexagon_area_total: f64,
    pub gauss_bonnet_area: f64,
}

impl CuspReport {
    pub fn ok(&self) -> bool {
        self.t_increasing && self.lengths_decreasing && self.area_constant
    }
}

/// Track `X(a)` along a strictly decreasing positive sequence of `a`.
pub fn cusp_limit_check(base: &SurfaceDescriptor, a_sequence: &[f64]) -> Result<CuspReport> {
    if a_sequence.iter().any(|&a| !(a > 0.0)) || a_sequence.windows(2).any(|w| !(w[0] > w[1])) {
        return Err(GeomError::Domain(
            "a-sequence must be positive and strictly decreasing".into(),
        ));
    }
    let mut samples = Vec::with_capacity(a_sequence.len());
    let (mut hexagon_area_total, mut gauss_bonnet_area) = (0.0, 0.0);
    for &a in a_sequence {
        let x = build_xa(base, a)?;
        hexagon_area_total = x.hexagon_area_total;
        gauss_bonnet_area = x.gauss_bonnet_area;
        samples.push(CuspSample {
            a,
            t: x.hexagon.t.value(),
            boundary_length: x.boundary_length,
            hexagon_area: PI,
        });
    }
    // Realized areas are checked only where the hexagon fits comfortably in
    // double precision.
    let area_constant = a_sequence.iter().filter(|&&a| a >= 0.1).all(|&a| {
        hexagon_solve(a)
            .map(|h| (h.area() - PI).abs() < 1e-9)
            .unwrap_or(false)
    });
    Ok(CuspReport {
        t_increasing: samples.windows(2).all(|w| w[0].t < w[1].t),
        lengths_decreasing: samples
            .windows(2)
            .all(|w| w[0].boundary_length > w[1].boundary_length),
        area_constant,
        base_area: base.total_area,
        hexagon_area_total,
        gauss_bonnet_area,
        samples,
    })
}
