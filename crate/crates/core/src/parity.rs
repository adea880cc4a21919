//! Crossing counts of closed curves on the flat torus with the systolic
//! arrangement of `S_g(π/12)`.
//!
//! The torus is the rectangle `[0, n] × [0, m]` with opposite sides identified.
//! Its systolic curves project to three families of lines: verticals `x ∈ ℤ`,
//! horizontals `y ∈ ℤ` and the slope −1 diagonals `x + y ∈ ℤ`. Closed curves
//! are handled through a lift to the plane: a polygonal path whose endpoint is
//! a lattice translate `(pn, qm)` of its start.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::surface;

/// Distance from an integer below which a vertex counts as lying on a line.
pub const GENERAL_POSITION_TOL: f64 = 1e-9;

/// Deterministic generic offset `(√2 − 1, √3 − 1)`, away from every line.
pub const GENERIC_OFFSET: [f64; 2] = [
    std::f64::consts::SQRT_2 - 1.0,
    0.732_050_807_568_877_2, // √3 − 1
];

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A primitive homology class `(p, q)`: `p` turns around the `n` direction and
/// `q` around the `m` direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    p: i64,
    q: i64,
}

impl CurveClass {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if gcd(p, q) != 1 {
            return Err(GeomError::NotPrimitive { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }

    /// Translation of the lift after one turn, `(pn, qm)`.
    pub fn translation(self, m: usize, n: usize) -> [f64; 2] {
        [(self.p * n as i64) as f64, (self.q * m as i64) as f64]
    }
}

/// The flat model of the arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatArrangement {
    pub m: usize,
    pub n: usize,
}

impl FlatArrangement {
    pub fn vertices(&self) -> usize {
        self.m * self.n
    }

    pub fn edges(&self) -> usize {
        3 * self.m * self.n
    }

    pub fn faces(&self) -> usize {
        2 * self.m * self.n
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices() as i64 - self.edges() as i64 + self.faces() as i64
    }
}

/// The three line families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Vertical,
    Horizontal,
    Diagonal,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Vertical, Family::Horizontal, Family::Diagonal];

    /// The function whose integer level sets are the lines of this family.
    pub fn level(self, pt: [f64; 2]) -> f64 {
        match self {
            Family::Vertical => pt[0],
            Family::Horizontal => pt[1],
            Family::Diagonal => pt[0] + pt[1],
        }
    }
}

/// Crossings split by family.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingCounts {
    pub vertical: u64,
    pub horizontal: u64,
    pub diagonal: u64,
}

impl CrossingCounts {
    pub fn total(&self) -> u64 {
        self.vertical + self.horizontal + self.diagonal
    }

    fn add(&mut self, family: Family, k: u64) {
        match family {
            Family::Vertical => self.vertical += k,
            Family::Horizontal => self.horizontal += k,
            Family::Diagonal => self.diagonal += k,
        }
    }
}

impl std::ops::Add for CrossingCounts {
    type Output = CrossingCounts;

    fn add(self, o: Self) -> Self {
        CrossingCounts {
            vertical: self.vertical + o.vertical,
            horizontal: self.horizontal + o.horizontal,
            diagonal: self.diagonal + o.diagonal,
        }
    }
}

/// A lift of a closed polygonal curve on the torus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedPath {
    pub points: Vec<[f64; 2]>,
}

impl ClosedPath {
    /// The lift must end at a lattice translate of its start.
    pub fn new(points: Vec<[f64; 2]>, m: usize, n: usize) -> Result<Self> {
        if points.len() < 2 {
            return Err(GeomError::Degenerate(
                "a closed path needs at least two points".into(),
            ));
        }
        let (first, last) = (points[0], points[points.len() - 1]);
        let dx = (last[0] - first[0]) / n as f64;
        let dy = (last[1] - first[1]) / m as f64;
        if (dx - dx.round()).abs() > GENERAL_POSITION_TOL
            || (dy - dy.round()).abs() > GENERAL_POSITION_TOL
        {
            return Err(GeomError::Degenerate(format!(
                "endpoint offset ({}, {}) is not a lattice vector",
                last[0] - first[0],
                last[1] - first[1]
            )));
        }
        Ok(Self { points })
    }

    /// Homology class `(p, q)` of the lift (not necessarily primitive).
    pub fn winding(&self, m: usize, n: usize) -> (i64, i64) {
        let (first, last) = (self.points[0], self.points[self.points.len() - 1]);
        (
            ((last[0] - first[0]) / n as f64).round() as i64,
            ((last[1] - first[1]) / m as f64).round() as i64,
        )
    }

    /// Insert a closed excursion `points[at] → loop… → points[at]`. The detour
    /// bounds a disk in the plane, so the torus class is unchanged.
    pub fn with_detour(&self, at: usize, excursion: &[[f64; 2]]) -> ClosedPath {
        let mut pts = self.points[..=at].to_vec();
        pts.extend_from_slice(excursion);
        pts.extend_from_slice(&self.points[at..]);
        ClosedPath { points: pts }
    }
}

fn segment_counts(a: [f64; 2], b: [f64; 2]) -> Result<CrossingCounts> {
    let mut counts = CrossingCounts::default();
    for fam in Family::ALL {
        let (fa, fb) = (fam.level(a), fam.level(b));
        for f in [fa, fb] {
            if (f - f.round()).abs() < GENERAL_POSITION_TOL {
                return Err(GeomError::Degenerate(format!(
                    "vertex ({}, {}) lies on a {:?} line; perturb the path",
                    a[0], a[1], fam
                )));
            }
        }
        counts.add(fam, (fb.floor() - fa.floor()).abs() as u64);
    }
    Ok(counts)
}

/// Transverse crossings of a closed path with the three line families.
pub fn path_crossing_count(path: &ClosedPath) -> Result<CrossingCounts> {
    path.points
        .windows(2)
        .try_fold(CrossingCounts::default(), |acc, w| {
            Ok(acc + segment_counts(w[0], w[1])?)
        })
}

/// Crossings of the straight representative of `class` started at `offset`.
pub fn straight_line_count_with_offset(
    class: CurveClass,
    m: usize,
    n: usize,
    offset: [f64; 2],
) -> Result<CrossingCounts> {
    let t = class.translation(m, n);
    let end = [offset[0] + t[0], offset[1] + t[1]];
    path_crossing_count(&ClosedPath::new(vec![offset, end], m, n)?)
}

/// Crossings of the straight representative of `class`:
/// `|p|n + |q|m + |pn + qm|`.
pub fn straight_line_count(class: CurveClass, m: usize, n: usize) -> Result<u64> {
    Ok(straight_line_count_with_offset(class, m, n, GENERIC_OFFSET)?.total())
}

/// Crossings of the L-shaped representative: horizontal run of length `pn`,
/// then vertical run of length `qm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LPathCount {
    pub horizontal_part: u64,
    pub vertical_part: u64,
    pub total: u64,
}

pub fn l_path_count(class: CurveClass, m: usize, n: usize) -> Result<LPathCount> {
    let o = GENERIC_OFFSET;
    let t = class.translation(m, n);
    let corner = [o[0] + t[0], o[1]];
    let end = [o[0] + t[0], o[1] + t[1]];
    let horizontal_part = segment_counts(o, corner)?.total();
    let vertical_part = segment_counts(corner, end)?.total();
    Ok(LPathCount {
        horizontal_part,
        vertical_part,
        total: horizontal_part + vertical_part,
    })
}

/// One line of a parity sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub p: i64,
    pub q: i64,
    pub count: u64,
    pub even: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub m: usize,
    pub n: usize,
    pub pmax: i64,
    pub qmax: i64,
    pub entries: Vec<SweepEntry>,
    pub violations: usize,
}

/// Straight-line crossing counts for every primitive `(p, q)` with
/// `|p| ≤ pmax`, `|q| ≤ qmax`. Classes `(p, q)` and `(−p, −q)` are both listed.
pub fn parity_theorem_sweep(m: usize, n: usize, pmax: i64, qmax: i64) -> Result<SweepReport> {
    surface::check_dims(m, n)?;
    let classes: Vec<CurveClass> = (-pmax..=pmax)
        .flat_map(|p| (-qmax..=qmax).map(move |q| (p, q)))
        .filter_map(|(p, q)| CurveClass::new(p, q).ok())
        .collect();
    let entries = classes
        .par_iter()
        .map(|&c| {
            let count = straight_line_count(c, m, n)?;
            Ok(SweepEntry {
                p: c.p(),
                q: c.q(),
                count,
                even: count % 2 == 0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = entries.iter().filter(|e| !e.even).count();
    Ok(SweepReport {
        m,
        n,
        pmax,
        qmax,
        entries,
        violations,
    })
}
