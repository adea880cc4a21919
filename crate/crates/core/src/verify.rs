//! Numerical, depth-bounded certification of the systole of `S_g(ε)`.
//!
//! Chains of squares are developed into the disk by gluing each square to the
//! previous one along a shared edge. Within a chain, a geodesic segment between
//! two cone-point lifts is a genuine saddle connection of `T_ε` when it crosses
//! the shared edges of the chain, in order, through their interiors. The
//! shortest such segment bounds from below every closed geodesic of `S_g(ε)`
//! through a branch point; curves avoiding branch points are handled by the
//! crossing bound `min(m, n)·y_ε > 2 min(l_ε, x_ε)`.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::epsilon::Epsilon;
use crate::error::{GeomError, Result};
use crate::hyp::{distance, segment_parameters, DiskPoint, Isometry};
use crate::quad;
use crate::surface::{self, ConeTorus, Corner};

pub const DEFAULT_DEPTH: usize = 4;
pub const MAX_DEPTH: usize = 8;
/// Relative position tolerance for edge crossings and vertex coincidences.
const GEOM_TOL: f64 = 1e-9;

/// Step from a square to its neighbour across one of its four edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    Right,
    Up,
    Left,
    Down,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Right,
        Direction::Up,
        Direction::Left,
        Direction::Down,
    ];

    pub fn opposite(self) -> Direction {
        match self {
            Direction::Right => Direction::Left,
            Direction::Up => Direction::Down,
            Direction::Left => Direction::Right,
            Direction::Down => Direction::Up,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Direction::Right => 'R',
            Direction::Up => 'U',
            Direction::Left => 'L',
            Direction::Down => 'D',
        }
    }

    /// The edge of a square crossed by this step, as corners in counterclockwise order.
    pub fn edge(self) -> (Corner, Corner) {
        match self {
            Direction::Right => (Corner::C, Corner::D),
            Direction::Up => (Corner::D, Corner::A),
            Direction::Left => (Corner::A, Corner::B),
            Direction::Down => (Corner::B, Corner::C),
        }
    }

    fn step(self, (r, c): (usize, usize), m: usize, n: usize) -> (usize, usize) {
        match self {
            Direction::Right => (r, (c + 1) % n),
            Direction::Up => ((r + 1) % m, c),
            Direction::Left => (r, (c + n - 1) % n),
            Direction::Down => ((r + m - 1) % m, c),
        }
    }
}

/// Isometries placing the neighbour across each edge of the canonical square.
#[derive(Debug, Clone, Copy)]
struct Gluings {
    corners: [DiskPoint; 4],
    maps: [Isometry; 4],
}

impl Gluings {
    fn new(torus: &ConeTorus) -> Self {
        let sq = &torus.square;
        let corners = [sq.a, sq.b, sq.c, sq.d];
        let [a, b, c, d] = corners;
        // Neighbour corners sent onto our corners, matching the flat picture.
        let maps = [
            Isometry::from_point_pairs(a, b, d, c), // right: A'→D, B'→C
            Isometry::from_point_pairs(b, c, a, d), // up:    B'→A, C'→D
            Isometry::from_point_pairs(c, d, b, a), // left:  C'→B, D'→A
            Isometry::from_point_pairs(a, d, b, c), // down:  A'→B, D'→C
        ];
        Self { corners, maps }
    }

    fn map(&self, dir: Direction) -> &Isometry {
        &self.maps[dir as usize]
    }
}

/// A gallery of squares developed into the disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DevelopedChain {
    pub steps: Vec<Direction>,
    /// Torus index of each square.
    pub squares: Vec<(usize, usize)>,
    /// Placement of each square relative to the canonical one.
    pub placements: Vec<Isometry>,
    /// Developed corners `A, B, C, D` of each square.
    pub corners: Vec<[DiskPoint; 4]>,
}

impl DevelopedChain {
    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub fn encoding(&self) -> String {
        self.steps.iter().map(|d| d.letter()).collect()
    }

    /// Largest mismatch between the endpoints of each shared edge as seen
    /// from the two squares that share it.
    pub fn max_gluing_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, dir) in self.steps.iter().enumerate() {
            let (p, q) = dir.edge();
            let (p2, q2) = dir.opposite().edge();
            let here = self.corners[k];
            let there = self.corners[k + 1];
            // The neighbour meets our edge with reversed orientation.
            worst = worst
                .max(distance(here[p.index()], there[q2.index()]).value())
                .max(distance(here[q.index()], there[p2.index()]).value());
        }
        worst
    }

    fn shared_edge(&self, k: usize) -> (DiskPoint, DiskPoint) {
        let (p, q) = self.steps[k].edge();
        (self.corners[k][p.index()], self.corners[k][q.index()])
    }

    fn push(&mut self, dir: Direction, gluings: &Gluings, m: usize, n: usize) {
        let last = *self
            .placements
            .last()
            .expect("chains start with a base square");
        let placement = last.compose(gluings.map(dir));
        let square = dir.step(*self.squares.last().unwrap(), m, n);
        self.steps.push(dir);
        self.squares.push(square);
        self.placements.push(placement);
        self.corners
            .push(gluings.corners.map(|p| placement.apply(p)));
    }

    fn pop(&mut self) {
        self.steps.pop();
        self.squares.pop();
        self.placements.pop();
        self.corners.pop();
    }

    fn base(base: (usize, usize), gluings: &Gluings) -> Self {
        DevelopedChain {
            steps: vec![],
            squares: vec![base],
            placements: vec![Isometry::IDENTITY],
            corners: vec![gluings.corners],
        }
    }
}

fn check_depth(depth: usize, min: usize) -> Result<()> {
    if depth < min || depth > MAX_DEPTH {
        return Err(GeomError::Domain(format!(
            "chain depth {depth} must lie in [{min}, {MAX_DEPTH}]"
        )));
    }
    Ok(())
}

/// Every non-backtracking chain of exactly `depth` steps from square `(0, 0)`.
pub fn enumerate_chains(torus: &ConeTorus, depth: usize) -> Result<Vec<DevelopedChain>> {
    enumerate_chains_from(torus, (0, 0), depth)
}

pub fn enumerate_chains_from(
    torus: &ConeTorus,
    base: (usize, usize),
    depth: usize,
) -> Result<Vec<DevelopedChain>> {
    check_depth(depth, 1)?;
    let gluings = Gluings::new(torus);
    let mut out = vec![];
    let mut chain = DevelopedChain::base(base, &gluings);
    walk(&mut chain, depth, &gluings, torus, &mut |c| {
        if c.depth() == depth {
            out.push(c.clone());
        }
    });
    Ok(out)
}

fn walk<F: FnMut(&DevelopedChain)>(
    chain: &mut DevelopedChain,
    depth: usize,
    gluings: &Gluings,
    torus: &ConeTorus,
    visit: &mut F,
) {
    visit(chain);
    if chain.depth() == depth {
        return;
    }
    for dir in Direction::ALL {
        if chain
            .steps
            .last()
            .is_some_and(|&prev| prev == dir.opposite())
        {
            continue;
        }
        chain.push(dir, gluings, torus.m, torus.n);
        walk(chain, depth, gluings, torus, visit);
        chain.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectionKind {
    /// A side of a single square.
    Side,
    /// The short diagonal `AC` of a single square.
    Diagonal,
    /// The long diagonal `BD` of a single square.
    LongDiagonal,
    /// A segment crossing at least one shared edge.
    Crossing,
}

/// A saddle connection found in a developed chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Steps of the chain prefix containing the segment.
    pub chain: String,
    pub from: (usize, Corner),
    pub to: (usize, Corner),
    pub kind: ConnectionKind,
    pub length: f64,
}

impl Witness {
    fn sort_key(&self) -> (String, usize, usize, usize, usize) {
        (
            self.chain.clone(),
            self.from.0,
            self.from.1.index(),
            self.to.0,
            self.to.1.index(),
        )
    }
}

/// Shortest saddle connection over all chains up to the given depth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaddleReport {
    pub depth: usize,
    pub base: (usize, usize),
    pub chains_explored: usize,
    pub min_length: f64,
    /// Every connection within tolerance of the minimum, sorted by chain encoding.
    pub witnesses: Vec<Witness>,
    /// Shortest connection that crosses at least one shared edge.
    pub min_crossing_length: f64,
    pub max_gluing_error: f64,
}

fn intra_square_kind(a: Corner, b: Corner) -> ConnectionKind {
    match (a, b) {
        (Corner::A, Corner::C) | (Corner::C, Corner::A) => ConnectionKind::Diagonal,
        (Corner::B, Corner::D) | (Corner::D, Corner::B) => ConnectionKind::LongDiagonal,
        _ => ConnectionKind::Side,
    }
}

/// True when the segment `[p, q]` crosses the shared edges `from..to` of the
/// chain through their interiors and in chain order.
fn stays_in_chain(
    chain: &DevelopedChain,
    from: usize,
    to: usize,
    p: DiskPoint,
    q: DiskPoint,
) -> bool {
    let mut last = 0.0;
    for k in from..to {
        let (e1, e2) = chain.shared_edge(k);
        let Some((s, t)) = segment_parameters(p, q, e1, e2) else {
            return false;
        };
        if !(s > last + GEOM_TOL && s < 1.0 - GEOM_TOL && t > GEOM_TOL && t < 1.0 - GEOM_TOL) {
            return false;
        }
        last = s;
    }
    true
}

#[derive(Debug, Clone)]
struct Partial {
    chains: usize,
    min: f64,
    min_crossing: f64,
    witnesses: Vec<Witness>,
    gluing_error: f64,
}

impl Partial {
    fn empty() -> Self {
        Self {
            chains: 0,
            min: f64::INFINITY,
            min_crossing: f64::INFINITY,
            witnesses: vec![],
            gluing_error: 0.0,
        }
    }

    fn offer(&mut self, w: Witness) {
        let tol = GEOM_TOL * w.length.max(1.0);
        match w.length.partial_cmp(&(self.min - tol)) {
            Some(Ordering::Less) => {
                self.min = w.length;
                self.witnesses.retain(|o| o.length <= w.length + tol);
                self.witnesses.push(w);
            }
            _ if w.length <= self.min + tol => {
                self.min = self.min.min(w.length);
                self.witnesses.push(w);
            }
            _ => {}
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.chains += other.chains;
        self.min_crossing = self.min_crossing.min(other.min_crossing);
        self.gluing_error = self.gluing_error.max(other.gluing_error);
        for w in other.witnesses {
            self.offer(w);
        }
        self
    }

    /// Consider every segment ending in the newest square of the chain.
    fn scan_newest(&mut self, chain: &DevelopedChain) {
        let j = chain.squares.len() - 1;
        let encoding = chain.encoding();
        for i in 0..=j {
            if i == j && j > 0 {
                // Single-square segments are congruent in every square; the
                // base square accounts for them.
                continue;
            }
            for a in Corner::ALL {
                for b in Corner::ALL {
                    if i == j && a.index() >= b.index() {
                        continue;
                    }
                    let p = chain.corners[i][a.index()];
                    let q = chain.corners[j][b.index()];
                    let len = distance(p, q).value();
                    if len < GEOM_TOL || !stays_in_chain(chain, i, j, p, q) {
                        continue;
                    }
                    let kind = if i == j {
                        intra_square_kind(a, b)
                    } else {
                        ConnectionKind::Crossing
                    };
                    if kind == ConnectionKind::Crossing {
                        self.min_crossing = self.min_crossing.min(len);
                    }
                    self.offer(Witness {
                        chain: encoding[..j].to_string(),
                        from: (i, a),
                        to: (j, b),
                        kind,
                        length: len,
                    });
                }
            }
        }
    }
}

/// Shortest saddle connection of `T_ε` seen in chains of at most `depth` steps
/// from the square `base`.
pub fn min_saddle_connection_from(
    torus: &ConeTorus,
    base: (usize, usize),
    depth: usize,
) -> Result<SaddleReport> {
    check_depth(depth, 1)?;
    let gluings = Gluings::new(torus);
    let mut root = Partial::empty();
    root.scan_newest(&DevelopedChain::base(base, &gluings));

    let branches: Vec<Partial> = Direction::ALL
        .par_iter()
        .map(|&first| {
            let mut part = Partial::empty();
            let mut chain = DevelopedChain::base(base, &gluings);
            chain.push(first, &gluings, torus.m, torus.n);
            walk(&mut chain, depth, &gluings, torus, &mut |c| {
                part.scan_newest(c);
                if c.depth() == depth {
                    part.chains += 1;
                    part.gluing_error = part.gluing_error.max(c.max_gluing_error());
                }
            });
            part
        })
        .collect();

    let total = branches.into_iter().fold(root, Partial::merge);
    let mut witnesses = total.witnesses;
    witnesses.sort_by_key(|w| w.sort_key());
    Ok(SaddleReport {
        depth,
        base,
        chains_explored: total.chains,
        min_length: total.min,
        witnesses,
        min_crossing_length: total.min_crossing,
        max_gluing_error: total.gluing_error,
    })
}

pub fn min_saddle_connection(torus: &ConeTorus, depth: usize) -> Result<SaddleReport> {
    min_saddle_connection_from(torus, (0, 0), depth)
}

/// Comparison of `multiple · y_ε` against the claimed systole `2 min(l_ε, x_ε)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingBound {
    pub multiple: usize,
    pub width: f64,
    pub claimed_systole: f64,
    /// `multiple · width − claimed_systole`.
    pub margin: f64,
    pub holds: bool,
}

/// The bound for an arbitrary number of crossed strips, without grid checks.
pub fn crossing_bound_for_multiple(multiple: usize, eps: f64) -> Result<CrossingBound> {
    let y = quad::perpendicular_width(eps)?.value();
    let l = quad::side_length_formula(eps)?.value();
    let x = quad::diagonal_length_formula(eps)?.value();
    let claimed = 2.0 * l.min(x);
    let margin = multiple as f64 * y - claimed;
    Ok(CrossingBound {
        multiple,
        width: y,
        claimed_systole: claimed,
        margin,
        holds: margin > 0.0,
    })
}

/// Whether `min(m, n)·y_ε > 2 min(l_ε, x_ε)`.
pub fn crossing_lower_bound(m: usize, n: usize, eps: Epsilon) -> Result<CrossingBound> {
    surface::check_dims(m, n)?;
    crossing_bound_for_multiple(m.min(n), eps.check_validated()?)
}

/// Smallest `k` with `k · y_ε > 2 min(l_ε, x_ε)`.
pub fn smallest_strip_multiple(eps: f64) -> Result<usize> {
    let b = crossing_bound_for_multiple(1, eps)?;
    Ok((b.claimed_systole / b.width).floor() as usize + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// Depth-bounded systole certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystoleCertificate {
    pub kind: String,
    pub m: usize,
    pub n: usize,
    pub epsilon: Epsilon,
    pub depth: usize,
    pub tolerance: f64,
    pub verdict: Verdict,
    /// `2 min(l_ε, x_ε)` from the closed forms.
    pub claimed_systole: f64,
    pub closed_form_min_segment: f64,
    pub saddle: Option<SaddleReport>,
    pub crossing: CrossingBound,
    pub smallest_strip_multiple: usize,
    pub failures: Vec<String>,
}

/// Certify `sys(S_g(ε)) = 2 min(l_ε, x_ε)` up to chain depth `depth`.
pub fn verify_systole(
    m: usize,
    n: usize,
    eps: Epsilon,
    depth: usize,
) -> Result<SystoleCertificate> {
    verify_systole_with_tol(m, n, eps, depth, GEOM_TOL)
}

/// As [`verify_systole`], comparing the saddle minimum to `min(l_ε, x_ε)` within `tol`.
pub fn verify_systole_with_tol(
    m: usize,
    n: usize,
    eps: Epsilon,
    depth: usize,
    tol: f64,
) -> Result<SystoleCertificate> {
    check_depth(depth, 1)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(GeomError::Domain(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let torus = surface::build_cone_torus(m, n, eps)?;
    let value = eps.value();
    let l = quad::side_length_formula(value)?.value();
    let x = quad::diagonal_length_formula(value)?.value();
    let closed_min = l.min(x);
    let crossing = crossing_lower_bound(m, n, eps)?;
    let mut failures = vec![];

    let saddle = if depth >= 2 {
        Some(min_saddle_connection(&torus, depth)?)
    } else {
        None
    };
    if let Some(s) = &saddle {
        if (s.min_length - closed_min).abs() > tol {
            failures.push(format!(
                "shortest saddle connection {} differs from min(l, x) = {}",
                s.min_length, closed_min
            ));
        }
    }
    if !crossing.holds {
        failures.push(format!(
            "{}·y = {} does not exceed 2 min(l, x) = {}",
            crossing.multiple,
            crossing.multiple as f64 * crossing.width,
            crossing.claimed_systole
        ));
    }
    let verdict = if !failures.is_empty() {
        Verdict::Fail
    } else if saddle.is_none() {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    Ok(SystoleCertificate {
        kind: "numerical, depth-bounded".into(),
        m,
        n,
        epsilon: eps,
        depth,
        tolerance: tol,
        verdict,
        claimed_systole: 2.0 * closed_min,
        closed_form_min_segment: closed_min,
        saddle,
        crossing,
        smallest_strip_multiple: smallest_strip_multiple(value)?,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn torus(eps: Epsilon) -> ConeTorus {
        surface::build_cone_torus(4, 4, eps).unwrap()
    }

    #[test]
    fn chain_counts() {
        let t = torus(Epsilon::ZERO);
        assert_eq!(enumerate_chains(&t, 1).unwrap().len(), 4);
        for depth in 1..=5 {
            let chains = enumerate_chains(&t, depth).unwrap();
            assert_eq!(chains.len(), 4 * 3usize.pow(depth as u32 - 1));
        }
        assert!(enumerate_chains(&t, 0).is_err());
        assert!(enumerate_chains(&t, 9).is_err());
    }

    #[test]
    fn chains_glue_isometrically() {
        for eps in [Epsilon::ZERO, Epsilon::critical()] {
            for chain in enumerate_chains(&torus(eps), 4).unwrap() {
                assert!(chain.max_gluing_error() < 1e-9, "{}", chain.encoding());
            }
        }
    }

    #[test]
    fn going_round_a_vertex_rotates_by_pi() {
        // R, U, L, D circles the top-right vertex of the base square and comes
        // back to the base square rotated by π about that vertex.
        let t = torus(Epsilon::pi_frac(1, 24));
        let gl = Gluings::new(&t);
        let mut chain = DevelopedChain::base((0, 0), &gl);
        for d in [
            Direction::Right,
            Direction::Up,
            Direction::Left,
            Direction::Down,
        ] {
            chain.push(d, &gl, 4, 4);
        }
        assert_eq!(chain.squares[4], (0, 0));
        let v = t.square.d;
        let rot = Isometry::to_origin(v)
            .inverse()
            .compose(&Isometry::rotation(std::f64::consts::PI))
            .compose(&Isometry::to_origin(v));
        let expected = t.square.vertices().map(|p| rot.apply(p));
        for (got, want) in chain.corners[4].iter().zip(expected) {
            assert!(distance(*got, want).value() < 1e-9);
        }
    }

    #[test]
    fn saddle_minimum_matches_closed_forms() {
        let cases = [
            (Epsilon::ZERO, 2.448_452_447_678_076),
            (Epsilon::pi_frac(1, 24), 2.473_433_915_022_996),
            (Epsilon::critical(), 2.553_373_736_760_691),
        ];
        for (eps, want) in cases {
            let r = min_saddle_connection(&torus(eps), 3).unwrap();
            assert_abs_diff_eq!(r.min_length, want, epsilon = 1e-9);
            assert!(r.min_crossing_length > r.min_length);
        }
        let r = min_saddle_connection(&torus(Epsilon::critical()), 3).unwrap();
        let kinds: Vec<_> = r.witnesses.iter().map(|w| w.kind).collect();
        assert!(kinds.contains(&ConnectionKind::Side));
        assert!(kinds.contains(&ConnectionKind::Diagonal));
    }

    #[test]
    fn crossing_bounds() {
        let b = crossing_lower_bound(4, 4, Epsilon::critical()).unwrap();
        assert!(b.holds);
        assert_abs_diff_eq!(
            b.margin,
            6.025_488_319_278_722 - 5.106_747_473_521_382,
            epsilon = 1e-12
        );
        let three = crossing_bound_for_multiple(3, std::f64::consts::PI / 12.0).unwrap();
        assert!(!three.holds);
        assert_eq!(
            smallest_strip_multiple(std::f64::consts::PI / 12.0).unwrap(),
            4
        );
        assert!(crossing_lower_bound(4, 4, Epsilon::ZERO).unwrap().holds);
    }

    #[test]
    fn certificates() {
        let c = verify_systole(4, 4, Epsilon::critical(), 3).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        assert_abs_diff_eq!(c.claimed_systole, 5.106_747_473_521_382, epsilon = 1e-12);
        let c = verify_systole(4, 4, Epsilon::ZERO, 3).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        let c = verify_systole(4, 4, Epsilon::critical(), 1).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert!(verify_systole(3, 4, Epsilon::ZERO, 3).is_err());
    }
}
