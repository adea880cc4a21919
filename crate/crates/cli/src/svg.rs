//! SVG 1.1 figures: the flat torus, a development in the disk, and a hexagon.

use std::collections::BTreeSet;
use std::fmt::Write;

use bolza_core::hyp::{klein_lerp, DiskPoint};
use bolza_core::maximal::HexagonSpec;
use bolza_core::parity::{CurveClass, GENERIC_OFFSET};
use bolza_core::surface::ConeTorus;
use bolza_core::verify::enumerate_chains;

use crate::decimal::format_significant;

const DISK_VIEW: f64 = 1000.0;
const DISK_RADIUS: f64 = 480.0;
const CELL: f64 = 60.0;
const MARGIN: f64 = 30.0;

struct Svg {
    out: String,
}

impl Svg {
    fn new(width: f64, height: f64, title: &str) -> Self {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
             width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
            w = num(width),
            h = num(height)
        );
        let _ = writeln!(out, "<title>{}</title>", escape(title));
        Self { out }
    }

    fn open_group(&mut self, id: &str, style: &str) {
        let _ = writeln!(self.out, "<g id=\"{id}\" {style}>");
    }

    fn close_group(&mut self) {
        self.out.push_str("</g>\n");
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64)) {
        let _ = writeln!(
            self.out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1)
        );
    }

    fn polyline(&mut self, pts: &[(f64, f64)], closed: bool) {
        let tag = if closed { "polygon" } else { "polyline" };
        let coords: Vec<String> = pts
            .iter()
            .map(|p| format!("{},{}", num(p.0), num(p.1)))
            .collect();
        let _ = writeln!(self.out, "<{tag} points=\"{}\"/>", coords.join(" "));
    }

    fn circle(&mut self, c: (f64, f64), r: f64) {
        let _ = writeln!(
            self.out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            num(c.0),
            num(c.1),
            num(r)
        );
    }

    fn text(&mut self, at: (f64, f64), s: &str) {
        let _ = writeln!(
            self.out,
            "<text x=\"{}\" y=\"{}\">{}</text>",
            num(at.0),
            num(at.1),
            escape(s)
        );
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

/// Coordinates rounded to 0.001 so the output is stable and compact.
fn num(x: f64) -> String {
    let r = (x * 1000.0).round() / 1000.0;
    let s = format!("{r:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// The flat model `[0, n] × [0, m]` with its grid, the slope −1 diagonals,
/// the cone points and optionally the straight `(p, q)` representative.
pub fn flat_torus(m: usize, n: usize, class: Option<CurveClass>) -> String {
    let (w, h) = (
        n as f64 * CELL + 2.0 * MARGIN,
        m as f64 * CELL + 2.0 * MARGIN,
    );
    let map = |x: f64, y: f64| (MARGIN + x * CELL, MARGIN + (m as f64 - y) * CELL);
    let title = match class {
        Some(c) => format!("Flat torus {m}x{n} with the ({}, {}) curve", c.p(), c.q()),
        None => format!("Flat torus {m}x{n}"),
    };
    let mut svg = Svg::new(w, h, &title);

    svg.open_group(
        "grid",
        "stroke=\"#1f3a93\" stroke-width=\"2\" fill=\"none\"",
    );
    for c in 0..=n {
        svg.line(map(c as f64, 0.0), map(c as f64, m as f64));
    }
    for r in 0..=m {
        svg.line(map(0.0, r as f64), map(n as f64, r as f64));
    }
    svg.close_group();

    // The marked diagonal of square (r, c) runs from its top-left to its bottom-right corner.
    svg.open_group(
        "diagonals",
        "stroke=\"#c0392b\" stroke-width=\"1.5\" fill=\"none\"",
    );
    for r in 0..m {
        for c in 0..n {
            let (x, y) = (c as f64, r as f64);
            svg.line(map(x, y + 1.0), map(x + 1.0, y));
        }
    }
    svg.close_group();

    svg.open_group("cone-points", "fill=\"#111111\"");
    for r in 0..m {
        for c in 0..n {
            svg.circle(map(c as f64, r as f64), 3.5);
        }
    }
    svg.close_group();

    if let Some(class) = class {
        svg.open_group(
            "curve",
            "stroke=\"#27ae60\" stroke-width=\"3\" fill=\"none\"",
        );
        for (a, b) in wrapped_pieces(class, m, n) {
            svg.line(map(a[0], a[1]), map(b[0], b[1]));
        }
        svg.close_group();
    }
    svg.finish()
}

/// Pieces of the straight representative, each translated into the
/// fundamental rectangle.
fn wrapped_pieces(class: CurveClass, m: usize, n: usize) -> Vec<([f64; 2], [f64; 2])> {
    let o = GENERIC_OFFSET;
    let t = class.translation(m, n);
    let (mf, nf) = (m as f64, n as f64);
    let mut cuts = vec![0.0, 1.0];
    for (start, delta, period) in [(o[0], t[0], nf), (o[1], t[1], mf)] {
        if delta == 0.0 {
            continue;
        }
        let (lo, hi) = (start.min(start + delta), start.max(start + delta));
        let mut k = (lo / period).ceil();
        while k * period < hi {
            cuts.push((k * period - start) / delta);
            k += 1.0;
        }
    }
    cuts.sort_by(|a, b| a.total_cmp(b));
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let at = |s: f64| [o[0] + s * t[0], o[1] + s * t[1]];
    cuts.windows(2)
        .map(|w| {
            let mid = at(0.5 * (w[0] + w[1]));
            let shift = [(mid[0] / nf).floor() * nf, (mid[1] / mf).floor() * mf];
            let (a, b) = (at(w[0]), at(w[1]));
            (
                [a[0] - shift[0], a[1] - shift[1]],
                [b[0] - shift[0], b[1] - shift[1]],
            )
        })
        .collect()
}

fn to_view(p: DiskPoint) -> (f64, f64) {
    (
        DISK_VIEW / 2.0 + DISK_RADIUS * p.x,
        DISK_VIEW / 2.0 - DISK_RADIUS * p.y,
    )
}

/// Points along the geodesic from `a` to `b`.
fn geodesic(a: DiskPoint, b: DiskPoint, samples: usize) -> Vec<(f64, f64)> {
    (0..=samples)
        .map(|i| to_view(klein_lerp(a, b, i as f64 / samples as f64)))
        .collect()
}

fn geodesic_polygon(corners: &[DiskPoint]) -> Vec<(f64, f64)> {
    let k = corners.len();
    let mut pts = vec![];
    for i in 0..k {
        let mut edge = geodesic(corners[i], corners[(i + 1) % k], 24);
        edge.pop();
        pts.extend(edge);
    }
    pts
}

/// Squares of every chain up to `depth`, developed into the disk.
pub fn disk_development(torus: &ConeTorus, depth: usize) -> bolza_core::Result<String> {
    let mut seen = BTreeSet::new();
    let mut squares = vec![];
    let mut record = |corners: [DiskPoint; 4]| {
        let c = corners
            .iter()
            .fold((0.0, 0.0), |acc, p| (acc.0 + p.x, acc.1 + p.y));
        let key = ((c.0 * 1e6).round() as i64, (c.1 * 1e6).round() as i64);
        if seen.insert(key) {
            squares.push(corners);
        }
    };
    if depth == 0 {
        let s = &torus.square;
        record([s.a, s.b, s.c, s.d]);
    } else {
        for chain in enumerate_chains(torus, depth)? {
            for corners in &chain.corners {
                record(*corners);
            }
        }
    }

    let title = format!(
        "Development of T_eps for a {}x{} grid at eps = {} to depth {depth}",
        torus.m, torus.n, torus.epsilon
    );
    let mut svg = Svg::new(DISK_VIEW, DISK_VIEW, &title);
    svg.open_group(
        "boundary",
        "stroke=\"#555555\" stroke-width=\"1\" fill=\"#f7f7f7\"",
    );
    svg.circle((DISK_VIEW / 2.0, DISK_VIEW / 2.0), DISK_RADIUS);
    svg.close_group();

    svg.open_group(
        "squares",
        "stroke=\"#1f3a93\" stroke-width=\"1\" fill=\"#dfe8f7\" fill-opacity=\"0.6\"",
    );
    for corners in &squares {
        svg.polyline(&geodesic_polygon(corners), true);
    }
    svg.close_group();

    svg.open_group(
        "diagonals",
        "stroke=\"#c0392b\" stroke-width=\"1\" fill=\"none\"",
    );
    for [a, _, c, _] in &squares {
        svg.polyline(&geodesic(*a, *c, 24), false);
    }
    svg.close_group();

    let mut points = BTreeSet::new();
    svg.open_group("cone-points", "fill=\"#111111\"");
    for corners in &squares {
        for p in corners {
            let v = to_view(*p);
            if points.insert(((v.0 * 100.0).round() as i64, (v.1 * 100.0).round() as i64)) {
                svg.circle(v, 2.5);
            }
        }
    }
    svg.close_group();
    Ok(svg.finish())
}

/// A right-angled hexagon with its side lengths written beside each side.
pub fn hexagon(h: &HexagonSpec) -> String {
    let title = format!(
        "Right-angled hexagon with alternating sides a = {} and t = {}",
        format_significant(h.a.value()),
        format_significant(h.t.value())
    );
    let mut svg = Svg::new(DISK_VIEW, DISK_VIEW, &title);
    svg.open_group(
        "boundary",
        "stroke=\"#555555\" stroke-width=\"1\" fill=\"#f7f7f7\"",
    );
    svg.circle((DISK_VIEW / 2.0, DISK_VIEW / 2.0), DISK_RADIUS);
    svg.close_group();
    svg.open_group(
        "hexagon",
        "stroke=\"#1f3a93\" stroke-width=\"2\" fill=\"#dfe8f7\"",
    );
    svg.polyline(&geodesic_polygon(&h.vertices), true);
    svg.close_group();

    let sides = h.measured_sides();
    let angles = h.measured_angles();
    svg.open_group(
        "labels",
        "font-family=\"sans-serif\" font-size=\"16\" fill=\"#111111\"",
    );
    for (i, side) in sides.iter().enumerate() {
        let mid = klein_lerp(h.vertices[i], h.vertices[(i + 1) % 6], 0.5);
        let (x, y) = to_view(mid);
        let (dx, dy) = (x - DISK_VIEW / 2.0, y - DISK_VIEW / 2.0);
        let r = dx.hypot(dy).max(1.0);
        let name = if i % 2 == 0 { "a" } else { "t" };
        let label = format!("{name} = {side:.6}");
        svg.text((x + 24.0 * dx / r - 40.0, y + 24.0 * dy / r), &label);
    }
    let worst = angles
        .iter()
        .map(|a| (a - std::f64::consts::FRAC_PI_2).abs())
        .fold(0.0, f64::max);
    svg.text((20.0, 30.0), &format!("max |angle - pi/2| = {worst:.3e}"));
    svg.text((20.0, 54.0), &format!("area = {:.12}", h.area()));
    svg.close_group();
    svg.finish()
}
