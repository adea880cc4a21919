//! The cone torus `T_ε` tiled by an `m × n` grid of squares and its branched
//! double cover `S_g(ε)`.
//!
//! Grid conventions: rows `0..m` from bottom to top, columns `0..n` from left to
//! right, square `(r, c)` has its bottom-left corner at vertex `(r, c)`. Inside
//! each square the wide corners `A` and `C` sit top-left and bottom-right, so the
//! marked diagonals all have slope −1 in the flat picture.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::epsilon::Epsilon;
use crate::error::{GeomError, Result};
use crate::hyp::{angle_at, Tolerance};
use crate::quad::{self, SquareLayout};

/// Corner of a square, named by its label in [`SquareLayout`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    /// Top-left, wide.
    A,
    /// Bottom-left, narrow.
    B,
    /// Bottom-right, wide.
    C,
    /// Top-right, narrow.
    D,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::A, Corner::B, Corner::C, Corner::D];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Offset `(dr, dc)` of this corner from the square's bottom-left vertex.
    pub fn offset(self) -> (usize, usize) {
        match self {
            Corner::A => (1, 0),
            Corner::B => (0, 0),
            Corner::C => (0, 1),
            Corner::D => (1, 1),
        }
    }

    pub fn is_wide(self) -> bool {
        matches!(self, Corner::A | Corner::C)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentKind {
    Horizontal,
    Vertical,
    /// Short diagonal `AC`, the marked one.
    Diagonal,
    /// Long diagonal `BD`; never systolic, kept for length comparisons.
    LongDiagonal,
}

/// A geodesic segment of `T_ε` joining two cone points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub kind: SegmentKind,
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub length: f64,
}

/// The quotient torus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeTorus {
    pub m: usize,
    pub n: usize,
    pub epsilon: Epsilon,
    pub square: SquareLayout,
    /// Every grid vertex is a cone point of angle π.
    pub cone_points: Vec<(usize, usize)>,
    /// `2mn` grid edges followed by the `mn` marked diagonals.
    pub edges: Vec<Segment>,
    /// Total angle at each cone point, in the order of `cone_points`.
    pub vertex_angle_sums: Vec<f64>,
}

/// All `(m, n) = (2k, n)` with `k ≥ 2`, `n ≥ 4` and `kn + 1 = g`.
pub fn admissible_dims(genus: usize) -> Vec<(usize, usize)> {
    if genus < 2 {
        return vec![];
    }
    let kn = genus - 1;
    (2..=kn / 4)
        .filter(|&k| kn.is_multiple_of(k) && kn / k >= 4)
        .map(|k| (2 * k, kn / k))
        .collect()
}

pub fn check_dims(m: usize, n: usize) -> Result<()> {
    if m >= 4 && m.is_multiple_of(2) && n >= 4 {
        Ok(())
    } else {
        Err(GeomError::InadmissibleGrid { m, n })
    }
}

impl ConeTorus {
    pub fn vertex_count(&self) -> usize {
        self.m * self.n
    }

    pub fn square_count(&self) -> usize {
        self.m * self.n
    }

    /// The squares meeting at vertex `(r, c)` with the corner each presents there.
    pub fn incident_corners(&self, r: usize, c: usize) -> [((usize, usize), Corner); 4] {
        let (m, n) = (self.m, self.n);
        let down = (r + m - 1) % m;
        let left = (c + n - 1) % n;
        [
            ((r, c), Corner::B),
            ((r, left), Corner::C),
            ((down, left), Corner::D),
            ((down, c), Corner::A),
        ]
    }

    /// Euler characteristic of the torus decomposition, with or without the
    /// marked diagonals.
    pub fn euler_characteristic(&self, with_diagonals: bool) -> i64 {
        let mn = (self.m * self.n) as i64;
        if with_diagonals {
            mn - 3 * mn + 2 * mn
        } else {
            mn - 2 * mn + mn
        }
    }

    /// Every segment joining cone points along a side or diagonal of a square.
    pub fn candidate_segments(&self) -> Vec<Segment> {
        let mut all = self.edges.clone();
        let (m, n) = (self.m, self.n);
        for r in 0..m {
            for c in 0..n {
                all.push(Segment {
                    kind: SegmentKind::LongDiagonal,
                    from: (r, c),
                    to: ((r + 1) % m, (c + 1) % n),
                    length: self.square.long_diagonal.value(),
                });
            }
        }
        all
    }

    /// Shortest segment length and the segments within `tol` of it.
    pub fn shortest_segments(&self, tol: f64) -> (f64, Vec<Segment>) {
        let all = self.candidate_segments();
        let min = all.iter().map(|s| s.length).fold(f64::INFINITY, f64::min);
        let short = all.into_iter().filter(|s| s.length - min <= tol).collect();
        (min, short)
    }
}

/// Build `T_ε` for `m, n ≥ 4`, `m` even and `ε ∈ [0, π/12]`.
pub fn build_cone_torus(m: usize, n: usize, eps: Epsilon) -> Result<ConeTorus> {
    build_cone_torus_with(m, n, eps, false)
}

/// As [`build_cone_torus`]; `allow_unvalidated` admits `ε ∈ (π/12, π/4)`.
pub fn build_cone_torus_with(
    m: usize,
    n: usize,
    eps: Epsilon,
    allow_unvalidated: bool,
) -> Result<ConeTorus> {
    check_dims(m, n)?;
    let value = if allow_unvalidated {
        eps.check_quad_range()?
    } else {
        eps.check_validated()?
    };
    let square = quad::build_square(value)?;
    let angles = square.measured_angles();

    let mut cone_points = Vec::with_capacity(m * n);
    let mut edges = Vec::with_capacity(3 * m * n);
    for r in 0..m {
        for c in 0..n {
            cone_points.push((r, c));
        }
    }
    let l = square.side_length.value();
    for &(r, c) in &cone_points {
        edges.push(Segment {
            kind: SegmentKind::Horizontal,
            from: (r, c),
            to: (r, (c + 1) % n),
            length: l,
        });
        edges.push(Segment {
            kind: SegmentKind::Vertical,
            from: (r, c),
            to: ((r + 1) % m, c),
            length: l,
        });
    }
    for &(r, c) in &cone_points {
        edges.push(Segment {
            kind: SegmentKind::Diagonal,
            from: ((r + 1) % m, c),
            to: (r, (c + 1) % n),
            length: square.short_diagonal.value(),
        });
    }

    let mut torus = ConeTorus {
        m,
        n,
        epsilon: eps,
        square,
        cone_points,
        edges,
        vertex_angle_sums: vec![],
    };
    torus.vertex_angle_sums = torus
        .cone_points
        .iter()
        .map(|&(r, c)| {
            torus
                .incident_corners(r, c)
                .iter()
                .map(|(_, k)| angles[k.index()])
                .sum()
        })
        .collect();
    Ok(torus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceType {
    Squares,
    /// Equilateral triangles with all angles π/6.
    Triangles666,
}

/// The closed surface `S_g(ε)`, described through its quotient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceDescriptor {
    pub genus: usize,
    pub m: usize,
    pub n: usize,
    pub epsilon: Epsilon,
    pub branch_points: usize,
    pub systole: f64,
    pub systolic_count: usize,
    pub decomposition: FaceType,
    pub total_area: f64,
    /// Vertex, edge and face counts of the systolic decomposition of the cover.
    pub lifted_vertices: usize,
    pub lifted_edges: usize,
    pub lifted_faces: usize,
}

impl SurfaceDescriptor {
    pub fn euler_characteristic(&self) -> i64 {
        self.lifted_vertices as i64 - self.lifted_edges as i64 + self.lifted_faces as i64
    }

    /// Riemann–Hurwitz for a double cover of the torus branched at every cone point.
    pub fn riemann_hurwitz_holds(&self) -> bool {
        let torus_chi = 0;
        2 - 2 * self.genus as i64 == 2 * torus_chi - self.branch_points as i64
    }
}

/// Form the branched double cover of `torus`.
pub fn double_cover(torus: &ConeTorus) -> SurfaceDescriptor {
    let tol = Tolerance::default().geometry;
    let mn = torus.m * torus.n;
    let (min, short) = torus.shortest_segments(tol);
    let diagonals_systolic = short.iter().any(|s| s.kind == SegmentKind::Diagonal);
    let faces_on_torus = if diagonals_systolic { 2 * mn } else { mn };
    SurfaceDescriptor {
        genus: (mn + 2) / 2,
        m: torus.m,
        n: torus.n,
        epsilon: torus.epsilon,
        branch_points: mn,
        systole: 2.0 * min,
        systolic_count: short.len(),
        decomposition: if diagonals_systolic {
            FaceType::Triangles666
        } else {
            FaceType::Squares
        },
        total_area: 2.0 * mn as f64 * torus.square.area(),
        lifted_vertices: mn,
        // Each systolic segment lifts to one closed geodesic through two branch
        // points, i.e. two arcs of the lifted complex.
        lifted_edges: 2 * short.len(),
        lifted_faces: 2 * faces_on_torus,
    }
}

/// Number of systolic geodesics of `S_g(ε)`.
pub fn systolic_count(m: usize, n: usize, eps: Epsilon) -> Result<usize> {
    Ok(double_cover(&build_cone_torus(m, n, eps)?).systolic_count)
}

/// Whether the systolic geodesics cut `S_g(ε)` into disks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FillingReport {
    pub genus: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub expected_euler: i64,
    pub face_type: FaceType,
    /// Faces around each cone point of the torus and around its lift.
    pub quotient_valence: usize,
    pub lifted_valence: usize,
    /// Measured angles of the two triangles of a square, when the diagonals are systolic.
    pub triangle_angles: Option<[[f64; 3]; 2]>,
    pub fills: bool,
}

pub fn filling_check(m: usize, n: usize, eps: Epsilon) -> Result<FillingReport> {
    Ok(filling_report(&build_cone_torus(m, n, eps)?))
}

pub fn filling_report(torus: &ConeTorus) -> FillingReport {
    let surf = double_cover(torus);
    let triangulated = surf.decomposition == FaceType::Triangles666;

    let faces_at_corner = |k: Corner| if triangulated && k.is_wide() { 2 } else { 1 };
    let valences: Vec<usize> = torus
        .cone_points
        .iter()
        .map(|&(r, c)| {
            torus
                .incident_corners(r, c)
                .iter()
                .map(|&(_, k)| faces_at_corner(k))
                .sum()
        })
        .collect();
    let quotient_valence = valences[0];
    let uniform = valences.iter().all(|&v| v == quotient_valence);

    let sq = &torus.square;
    let triangle_angles = triangulated.then(|| {
        [
            [
                angle_at(sq.a, sq.b, sq.c),
                angle_at(sq.b, sq.c, sq.a),
                angle_at(sq.c, sq.a, sq.b),
            ],
            [
                angle_at(sq.c, sq.d, sq.a),
                angle_at(sq.d, sq.a, sq.c),
                angle_at(sq.a, sq.c, sq.d),
            ],
        ]
    });

    let euler = surf.euler_characteristic();
    let expected = 2 - 2 * surf.genus as i64;
    // The complement consists of squares or triangles, each avoiding branch
    // points, so every lifted face is a disk; filling reduces to the Euler count.
    FillingReport {
        genus: surf.genus,
        vertices: surf.lifted_vertices,
        edges: surf.lifted_edges,
        faces: surf.lifted_faces,
        euler_characteristic: euler,
        expected_euler: expected,
        face_type: surf.decomposition,
        quotient_valence,
        lifted_valence: 2 * quotient_valence,
        triangle_angles,
        fills: euler == expected && uniform,
    }
}

/// Angle defect check: total angle around each cone point equals π.
pub fn max_cone_angle_error(torus: &ConeTorus) -> f64 {
    torus
        .vertex_angle_sums
        .iter()
        .map(|s| (s - PI).abs())
        .fold(0.0, f64::max)
}
