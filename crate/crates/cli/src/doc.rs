//! The JSON document written by every subcommand in `--json` mode.
//!
//! ```json
//! {"schema_version": 1, "surface": {...} | null, "certificates": [...]}
//! ```
//!
//! Lengths and other reals are [`Real`]s; counts are plain integers.

use bolza_core::deform::DeformationSample;
use bolza_core::maximal::{BoundedSurfaceDescriptor, CuspReport, HexagonSpec};
use bolza_core::parity::SweepReport;
use bolza_core::roots::Bisection;
use bolza_core::surface::{FaceType, FillingReport, SurfaceDescriptor};
use bolza_core::verify::{ConnectionKind, CrossingBound, SystoleCertificate, Verdict, Witness};
use bolza_core::{quad, Epsilon};
use serde::{Deserialize, Serialize};

use crate::decimal::Real;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: u32,
    pub surface: Option<SurfaceJson>,
    pub certificates: Vec<Certificate>,
}

impl Document {
    pub fn new(surface: Option<SurfaceJson>, certificates: Vec<Certificate>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            surface,
            certificates,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EulerCounts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub characteristic: i64,
}

/// `S_g(ε)` as persisted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceJson {
    pub genus: usize,
    pub m: usize,
    pub n: usize,
    pub epsilon: String,
    pub epsilon_value: Real,
    pub branch_points: usize,
    pub systole: Real,
    pub systolic_count: usize,
    pub decomposition: FaceType,
    pub total_area: Real,
    pub side_length: Real,
    pub short_diagonal: Real,
    pub width: Real,
    pub euler: EulerCounts,
    pub riemann_hurwitz: bool,
}

impl SurfaceJson {
    pub fn from_descriptor(d: &SurfaceDescriptor) -> Self {
        let e = d.epsilon.value();
        let closed = |r: bolza_core::Result<bolza_core::HypLength>| {
            Real::new(r.map(|h| h.value()).unwrap_or(f64::NAN))
        };
        Self {
            genus: d.genus,
            m: d.m,
            n: d.n,
            epsilon: d.epsilon.to_string(),
            epsilon_value: e.into(),
            branch_points: d.branch_points,
            systole: d.systole.into(),
            systolic_count: d.systolic_count,
            decomposition: d.decomposition,
            total_area: d.total_area.into(),
            side_length: closed(quad::side_length_formula(e)),
            short_diagonal: closed(quad::diagonal_length_formula(e)),
            width: closed(quad::perpendicular_width(e)),
            euler: EulerCounts {
                vertices: d.lifted_vertices,
                edges: d.lifted_edges,
                faces: d.lifted_faces,
                characteristic: d.euler_characteristic(),
            },
            riemann_hurwitz: d.riemann_hurwitz_holds(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Filling(FillingJson),
    Lengths(LengthsJson),
    Epsilon0(Epsilon0Json),
    Systole(Box<SystoleJson>),
    Parity(ParityJson),
    Hexagon(HexagonJson),
    BoundedSurface(BoundedJson),
    Cusp(CuspJson),
    Render(RenderJson),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FillingJson {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub expected_euler: i64,
    pub face_type: FaceType,
    pub quotient_valence: usize,
    pub lifted_valence: usize,
    pub triangle_angles: Option<Vec<Real>>,
    pub fills: bool,
}

impl From<&FillingReport> for FillingJson {
    fn from(r: &FillingReport) -> Self {
        Self {
            vertices: r.vertices,
            edges: r.edges,
            faces: r.faces,
            euler_characteristic: r.euler_characteristic,
            expected_euler: r.expected_euler,
            face_type: r.face_type,
            quotient_valence: r.quotient_valence,
            lifted_valence: r.lifted_valence,
            triangle_angles: r
                .triangle_angles
                .map(|faces| faces.iter().flatten().map(|&a| Real::new(a)).collect()),
            fills: r.fills,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleJson {
    pub epsilon: String,
    pub epsilon_value: Real,
    pub l: Real,
    pub x: Real,
    pub y: Real,
    pub sys: Real,
    pub dl_deps: Real,
    pub dx_deps: Real,
    pub validated: bool,
}

impl SampleJson {
    pub fn new(token: Epsilon, s: &DeformationSample) -> Self {
        Self {
            epsilon: token.to_string(),
            epsilon_value: s.epsilon.into(),
            l: s.l.into(),
            x: s.x.into(),
            y: s.y.into(),
            sys: s.sys.into(),
            dl_deps: s.dl_deps.into(),
            dx_deps: s.dx_deps.into(),
            validated: s.validated,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthsJson {
    pub samples: Vec<SampleJson>,
    pub sys_strictly_increasing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Epsilon0Json {
    pub value: Real,
    pub target: String,
    pub delta: Real,
    pub tolerance: Real,
    pub matches: bool,
    pub iterations: usize,
    pub bracket_width: Real,
    pub l_minus_x: Real,
    pub angle_residual: Real,
}

impl Epsilon0Json {
    pub fn new(b: &Bisection, tolerance: f64) -> Self {
        let e = b.root;
        let l = quad::side_length_formula(e)
            .map(|h| h.value())
            .unwrap_or(f64::NAN);
        let x = quad::diagonal_length_formula(e)
            .map(|h| h.value())
            .unwrap_or(f64::NAN);
        let delta = (e - bolza_core::epsilon::CRITICAL).abs();
        Self {
            value: e.into(),
            target: "pi/12".into(),
            delta: delta.into(),
            tolerance: tolerance.into(),
            matches: delta < tolerance,
            iterations: b.iterations,
            bracket_width: b.width.into(),
            l_minus_x: (l - x).into(),
            angle_residual: bolza_core::deform::crossover_angle_residual(e).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub chain: String,
    pub from: String,
    pub to: String,
    pub kind: ConnectionKind,
    pub length: Real,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        Self {
            chain: w.chain.clone(),
            from: format!("{}{:?}", w.from.0, w.from.1),
            to: format!("{}{:?}", w.to.0, w.to.1),
            kind: w.kind,
            length: w.length.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingJson {
    pub multiple: usize,
    pub width: Real,
    pub claimed_systole: Real,
    pub margin: Real,
    pub holds: bool,
}

impl From<&CrossingBound> for CrossingJson {
    fn from(c: &CrossingBound) -> Self {
        Self {
            multiple: c.multiple,
            width: c.width.into(),
            claimed_systole: c.claimed_systole.into(),
            margin: c.margin.into(),
            holds: c.holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystoleJson {
    pub label: String,
    pub m: usize,
    pub n: usize,
    pub epsilon: String,
    pub depth: usize,
    pub tolerance: Real,
    pub verdict: Verdict,
    pub claimed_systole: Real,
    pub closed_form_min_segment: Real,
    pub min_saddle_connection: Option<Real>,
    pub min_crossing_connection: Option<Real>,
    pub chains_explored: usize,
    pub max_gluing_error: Option<Real>,
    pub witnesses: Vec<WitnessJson>,
    pub crossing: CrossingJson,
    pub smallest_strip_multiple: usize,
    pub failures: Vec<String>,
}

impl From<&SystoleCertificate> for SystoleJson {
    fn from(c: &SystoleCertificate) -> Self {
        let saddle = c.saddle.as_ref();
        Self {
            label: c.kind.clone(),
            m: c.m,
            n: c.n,
            epsilon: c.epsilon.to_string(),
            depth: c.depth,
            tolerance: c.tolerance.into(),
            verdict: c.verdict,
            claimed_systole: c.claimed_systole.into(),
            closed_form_min_segment: c.closed_form_min_segment.into(),
            min_saddle_connection: saddle.map(|s| s.min_length.into()),
            min_crossing_connection: saddle.map(|s| s.min_crossing_length.into()),
            chains_explored: saddle.map_or(0, |s| s.chains_explored),
            max_gluing_error: saddle.map(|s| s.max_gluing_error.into()),
            witnesses: saddle.map_or(vec![], |s| s.witnesses.iter().map(Into::into).collect()),
            crossing: (&c.crossing).into(),
            smallest_strip_multiple: c.smallest_strip_multiple,
            failures: c.failures.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParityClassJson {
    pub p: i64,
    pub q: i64,
    pub count: u64,
    pub even: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParityJson {
    pub m: usize,
    pub n: usize,
    pub pmax: i64,
    pub qmax: i64,
    pub classes: Vec<ParityClassJson>,
    pub violations: usize,
    pub offset_seed: u64,
    pub offsets_checked: usize,
    pub offset_mismatches: usize,
}

impl ParityJson {
    pub fn new(r: &SweepReport, seed: u64, checked: usize, mismatches: usize) -> Self {
        Self {
            m: r.m,
            n: r.n,
            pmax: r.pmax,
            qmax: r.qmax,
            classes: r
                .entries
                .iter()
                .map(|e| ParityClassJson {
                    p: e.p,
                    q: e.q,
                    count: e.count,
                    even: e.even,
                })
                .collect(),
            violations: r.violations,
            offset_seed: seed,
            offsets_checked: checked,
            offset_mismatches: mismatches,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HexagonJson {
    pub a: Real,
    pub t: Real,
    pub sides: Vec<Real>,
    pub angles: Vec<Real>,
    pub area: Real,
    pub identity_residual: Real,
}

impl From<&HexagonSpec> for HexagonJson {
    fn from(h: &HexagonSpec) -> Self {
        Self {
            a: h.a.value().into(),
            t: h.t.value().into(),
            sides: h.measured_sides().map(Real::new).to_vec(),
            angles: h.measured_angles().map(Real::new).to_vec(),
            area: h.area().into(),
            identity_residual: h.identity_residual().into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundedJson {
    pub a: Real,
    pub boundary_count: usize,
    pub valence: usize,
    pub boundary_length: Real,
    pub hexagon_count: usize,
    pub hexagon_area_total: Real,
    pub gauss_bonnet_area: Real,
}

impl From<&BoundedSurfaceDescriptor> for BoundedJson {
    fn from(x: &BoundedSurfaceDescriptor) -> Self {
        Self {
            a: x.a.into(),
            boundary_count: x.boundary_count,
            valence: x.valence,
            boundary_length: x.boundary_length.into(),
            hexagon_count: x.hexagon_count,
            hexagon_area_total: x.hexagon_area_total.into(),
            gauss_bonnet_area: x.gauss_bonnet_area.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuspSampleJson {
    pub a: Real,
    pub t: Real,
    pub boundary_length: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuspJson {
    pub samples: Vec<CuspSampleJson>,
    pub t_increasing: bool,
    pub lengths_decreasing: bool,
    pub area_constant: bool,
    pub base_area: Real,
}

impl From<&CuspReport> for CuspJson {
    fn from(r: &CuspReport) -> Self {
        Self {
            samples: r
                .samples
                .iter()
                .map(|s| CuspSampleJson {
                    a: s.a.into(),
                    t: s.t.into(),
                    boundary_length: s.boundary_length.into(),
                })
                .collect(),
            t_increasing: r.t_increasing,
            lengths_decreasing: r.lengths_decreasing,
            area_constant: r.area_constant,
            base_area: r.base_area.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderJson {
    pub target: String,
    pub path: Option<String>,
    pub bytes: usize,
    pub svg: Option<String>,
}
