//! Acceptance checks. Each test prints one `criterion N [PASS|FAIL]` line to
//! stderr (bypassing output capture) and then asserts.

use std::f64::consts::PI;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use bolza_core::deform::{self, find_epsilon0, linspace, systole_profile};
use bolza_core::hyp::{angle_at, distance, DiskPoint, Isometry};
use bolza_core::maximal::{
    build_xa, cusp_limit_check, hexagon_solve, opposite_side, vertex_valence,
};
use bolza_core::parity::{
    parity_theorem_sweep, path_crossing_count, straight_line_count, ClosedPath, CurveClass,
};
use bolza_core::quad::{self, build_square};
use bolza_core::surface::{build_cone_torus, double_cover, systolic_count};
use bolza_core::verify::{crossing_bound_for_multiple, verify_systole, Verdict};
use bolza_core::Epsilon;
use bolza_workbench::doc::{Certificate, Document, SurfaceJson};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, title: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(
        std::io::stderr(),
        "criterion {n:>2} [{verdict}] {title}: {detail}"
    );
}

fn l(eps: f64) -> f64 {
    quad::side_length_formula(eps).unwrap().value()
}

fn x(eps: f64) -> f64 {
    quad::diagonal_length_formula(eps).unwrap().value()
}

fn y(eps: f64) -> f64 {
    quad::perpendicular_width(eps).unwrap().value()
}

#[test]
fn criterion_01_initial_lengths() {
    let (l0, x0) = (l(0.0), x(0.0));
    let pass = (l0 - 2.4485).abs() <= 5e-3 && (x0 - 3.0572).abs() <= 5e-3;
    report(
        1,
        "l_0 and x_0",
        pass,
        &format!("l_0 = {l0:.6}, x_0 = {x0:.6} (tol 5e-3)"),
    );
    assert!(pass);
}

#[test]
fn criterion_02_critical_value() {
    let e0 = find_epsilon0();
    let c = PI / 12.0;
    let de = (e0 - c).abs();
    let gap = (l(c) - x(c)).abs();
    let pass = de < 1e-10 && gap <= 1e-12 && (l(c) - 2.5533).abs() <= 5e-3;
    report(
        2,
        "critical epsilon",
        pass,
        &format!(
            "|eps0 - pi/12| = {de:.2e}, |l - x| at pi/12 = {gap:.2e}, l = {:.6}",
            l(c)
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_03_perpendicular_width() {
    let grid: Vec<f64> = linspace(0.0, PI / 4.0, 101).into_iter().take(100).collect();
    let worst = grid
        .iter()
        .map(|&e| (y(e).cosh() - (2f64.sqrt() * e.cos() + 1.0)).abs())
        .fold(0.0, f64::max);
    let decreasing = grid.windows(2).all(|w| y(w[1]) < y(w[0]));
    let y12 = y(PI / 12.0);
    let pass = worst <= 1e-12 && (y12 - 1.5066).abs() <= 5e-4 && decreasing;
    report(
        3,
        "perpendicular width",
        pass,
        &format!(
            "max identity residual {worst:.2e}, y(pi/12) = {y12:.6}, decreasing = {decreasing}"
        ),
    );
    assert!(pass);
}

/// Reference d(cosh l)/dε, with denominator sin²(π/8 − ε/2)·sin²(π/4 + ε).
fn reference_cosh_side_derivative(e: f64) -> f64 {
    0.25 * ((PI / 4.0 + e).sin() - (PI / 4.0 - e).sin())
        / ((PI / 8.0 - e / 2.0).sin().powi(2) * (PI / 4.0 + e).sin().powi(2))
}

fn reference_cosh_diagonal_derivative(e: f64) -> f64 {
    -(2f64.sqrt()) * (PI / 8.0 - e / 2.0).cos() / (PI / 8.0 + e / 2.0).sin().powi(3)
}

#[test]
fn criterion_04_derivatives() {
    let h = 1e-5;
    let interior: Vec<f64> = linspace(0.0, PI / 12.0, 51)[1..50].to_vec();
    let fd = |f: &dyn Fn(f64) -> f64, e: f64| (f(e + h) - f(e - h)) / (2.0 * h);
    let cl = |e: f64| l(e).cosh();
    let cx = |e: f64| x(e).cosh();
    let rel = |a: f64, b: f64| ((a - b) / b).abs();

    let mut worst_l = 0.0f64;
    let mut worst_l_lib = 0.0f64;
    let mut worst_x = 0.0f64;
    let mut signs = true;
    for &e in &interior {
        let (dl, dx) = (fd(&cl, e), fd(&cx, e));
        worst_l = worst_l.max(rel(reference_cosh_side_derivative(e), dl));
        worst_l_lib = worst_l_lib.max(rel(quad::cosh_side_derivative(e), dl));
        worst_x = worst_x.max(rel(reference_cosh_diagonal_derivative(e), dx));
        signs &=
            reference_cosh_side_derivative(e) > 0.0 && reference_cosh_diagonal_derivative(e) < 0.0;
        let s = deform::sample(e).unwrap();
        signs &= s.dl_deps > 0.0 && s.dx_deps < 0.0;
    }
    let pass = worst_l < 1e-6 && worst_x < 1e-6 && signs;
    report(
        4,
        "derivative closed forms",
        pass,
        &format!(
            "reference d(cosh l) max rel err {worst_l:.3e}, d(cosh x) {worst_x:.3e}, signs ok = {signs} \
             (corrected d(cosh l) used by the library: {worst_l_lib:.3e})"
        ),
    );
    assert!(
        worst_l_lib < 1e-6,
        "corrected form must agree with finite differences"
    );
    assert!(pass);
}

#[test]
fn criterion_05_monotone_systole() {
    let grid = linspace(0.0, PI / 12.0, 50);
    let profile = systole_profile(&grid).unwrap();
    let sys: Vec<f64> = profile.iter().map(|s| s.sys).collect();
    let pass = deform::is_strictly_increasing(sys.iter().copied()) && sys.len() == 50;
    report(
        5,
        "monotone systole",
        pass,
        &format!(
            "sys from {:.6} to {:.6} over {} points",
            sys[0],
            sys[sys.len() - 1],
            sys.len()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_06_combinatorics() {
    let mut failures = vec![];
    let mut rows = vec![];
    for ((m, n), listed) in [((4, 4), 48), ((4, 5), 60), ((6, 4), 84), ((4, 10), 126)] {
        let g = (m * n + 2) / 2;
        let crit = build_cone_torus(m, n, Epsilon::critical()).unwrap();
        let s = double_cover(&crit);
        let mut structural = s.genus == g
            && s.branch_points == 2 * g - 2
            && s.systolic_count == 6 * g - 6
            && crit.euler_characteristic(true) == 0
            && s.euler_characteristic() == 2 - 2 * g as i64
            && (s.total_area - 4.0 * PI * (g as f64 - 1.0)).abs() <= 1e-9;
        for eps in [
            Epsilon::ZERO,
            Epsilon::pi_frac(1, 24),
            Epsilon::new(PI / 12.0 - 1e-6),
        ] {
            let below = double_cover(&build_cone_torus(m, n, eps).unwrap());
            structural &= systolic_count(m, n, eps).unwrap() == 4 * g - 4
                && below.euler_characteristic() == 2 - 2 * g as i64
                && (below.total_area - 4.0 * PI * (g as f64 - 1.0)).abs() <= 1e-9;
        }
        rows.push(format!(
            "({m},{n}) g={g} count={} 6g-6={} listed={listed}",
            s.systolic_count,
            6 * g - 6
        ));
        if !structural || s.systolic_count != listed {
            failures.push(format!("({m},{n})"));
        }
    }
    let pass = failures.is_empty();
    report(
        6,
        "combinatorics",
        pass,
        &format!("{}; failing: {failures:?}", rows.join(", ")),
    );
    assert!(pass);
}

#[test]
fn criterion_07_geometric_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let e = rng.gen_range(0.0..PI / 4.0);
        let sq = build_square(e).unwrap();
        let perp = sq.perpendiculars();
        for d in sq.measured_sides().map(|s| s - l(e)) {
            worst = worst.max(d.abs());
        }
        worst = worst.max((distance(sq.a, sq.c).value() - x(e)).abs());
        worst = worst
            .max((perp.mn_length - y(e)).abs())
            .max((perp.pq_length - y(e)).abs());
    }
    let pass = worst <= 1e-9;
    report(
        7,
        "constructed square vs closed forms",
        pass,
        &format!("max deviation {worst:.2e} over 100 eps"),
    );
    assert!(pass);
}

#[test]
fn criterion_08_systole_certificate() {
    let mut lines = vec![];
    let mut pass = true;
    for eps in [Epsilon::ZERO, Epsilon::pi_frac(1, 24), Epsilon::critical()] {
        let start = Instant::now();
        let cert = verify_systole(4, 4, eps, 4).unwrap();
        let took = start.elapsed();
        let e = eps.value();
        let saddle = cert.saddle.as_ref().map_or(f64::NAN, |s| s.min_length);
        let ok = cert.verdict == Verdict::Pass
            && (saddle - l(e).min(x(e))).abs() <= 1e-9
            && 4.0 * y(e) > 2.0 * l(e).min(x(e))
            && took < Duration::from_secs(10);
        pass &= ok;
        lines.push(format!(
            "eps {eps}: {:?} in {:.2}s",
            cert.verdict,
            took.as_secs_f64()
        ));
    }
    let three = crossing_bound_for_multiple(3, PI / 12.0).unwrap();
    let four = crossing_bound_for_multiple(4, PI / 12.0).unwrap();
    pass &= !three.holds && four.holds;
    lines.push(format!(
        "3y - 2l = {:.4}, 4y - 2l = {:.4}",
        three.margin, four.margin
    ));
    report(8, "systole certificate", pass, &lines.join("; "));
    assert!(pass);
}

fn coprime(p: i64, q: i64) -> bool {
    let (mut a, mut b) = (p.abs(), q.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a == 1
}

#[test]
fn criterion_09_parity() {
    let mut odd = 0;
    let mut formula_misses = 0;
    for (m, n) in [(4, 4), (4, 5), (6, 4)] {
        let r = parity_theorem_sweep(m, n, 5, 5).unwrap();
        odd += r.entries.iter().filter(|e| e.count % 2 == 1).count();
        for e in r.entries.iter().filter(|e| e.p > 0 && e.q > 0) {
            if e.count != 2 * (e.p as u64 * n as u64 + e.q as u64 * m as u64) {
                formula_misses += 1;
            }
        }
    }
    let worked = straight_line_count(CurveClass::new(1, 1).unwrap(), 4, 5).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut odd_changes = 0;
    for trial in 0..20 {
        let (m, n) = [(4, 4), (4, 5), (6, 4)][trial % 3];
        let (p, q) = loop {
            let pq = (rng.gen_range(-4..=4i64), rng.gen_range(-4..=4i64));
            if coprime(pq.0, pq.1) {
                break pq;
            }
        };
        let t = CurveClass::new(p, q).unwrap().translation(m, n);
        let o = [rng.gen_range(0.05..0.95), rng.gen_range(0.05..0.95)];
        let mid = [
            o[0] + t[0] / 2.0 + rng.gen_range(-0.7..0.7),
            o[1] + t[1] / 2.0 + rng.gen_range(-0.7..0.7),
        ];
        let path = ClosedPath::new(vec![o, mid, [o[0] + t[0], o[1] + t[1]]], m, n).unwrap();
        let before = path_crossing_count(&path).unwrap().total();
        let r = rng.gen_range(0.3..1.2);
        let c = [mid[0] + 0.37 * r, mid[1] + 0.11 * r];
        let loop_pts: Vec<[f64; 2]> = (0..=9)
            .map(|i| {
                let th = 2.0 * PI * i as f64 / 9.0 + 0.123;
                [c[0] + r * th.cos(), c[1] + r * th.sin()]
            })
            .collect();
        let detoured = path.with_detour(1, &loop_pts);
        let after = path_crossing_count(&detoured).unwrap().total();
        if (after as i64 - before as i64) % 2 != 0 {
            odd_changes += 1;
        }
    }
    let pass = odd == 0 && formula_misses == 0 && worked == 18 && odd_changes == 0;
    report(
        9,
        "intersection parity",
        pass,
        &format!(
            "odd counts {odd}, 2(pn+qm) mismatches {formula_misses}, (1,1) on 4x5 = {worked}, \
             odd detour changes {odd_changes}/20"
        ),
    );
    assert!(pass);
}

/// Walk `a`, turn left, `s`, turn left, three times; return the corners.
fn turtle(a: f64, s: f64) -> Vec<DiskPoint> {
    let mut frame = Isometry::IDENTITY;
    let mut pts = vec![];
    for i in 0..7 {
        pts.push(frame.apply(DiskPoint::ORIGIN));
        frame = frame
            .compose(&Isometry::translation_x(if i % 2 == 0 { a } else { s }))
            .compose(&Isometry::rotation(PI / 2.0));
    }
    pts
}

/// The `s` that closes the walk, by bisection on the closing gap.
fn closing_side(a: f64) -> f64 {
    let trace = |s: f64| {
        let g = Isometry::translation_x(a)
            .compose(&Isometry::rotation(PI / 2.0))
            .compose(&Isometry::translation_x(s))
            .compose(&Isometry::rotation(PI / 2.0))
            .matrix();
        (g[0][0] + g[1][1]).abs() - 1.0
    };
    let (mut lo, mut hi) = (1e-9, 20.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if trace(lo) * trace(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn criterion_10_hexagon() {
    let mut worst_angle = 0.0f64;
    let mut worst_side = 0.0f64;
    for a in [0.25, 0.5, 1.0, 2.0] {
        let s = closing_side(a);
        let pts = turtle(a, s);
        worst_side = worst_side.max(distance(pts[0], pts[6]).value());
        let t = opposite_side(a).unwrap();
        for i in 0..6 {
            let prev = pts[(i + 5) % 6];
            worst_angle = worst_angle.max((angle_at(pts[i], prev, pts[i + 1]) - PI / 2.0).abs());
            let want = if i % 2 == 0 { a } else { t };
            worst_side = worst_side.max((distance(pts[i], pts[i + 1]).value() - want).abs());
        }
        let hex = hexagon_solve(a).unwrap();
        for (i, side) in hex.measured_sides().iter().enumerate() {
            let want = if i % 2 == 0 { a } else { t };
            worst_side = worst_side.max((side - want).abs());
        }
        for angle in hex.measured_angles() {
            worst_angle = worst_angle.max((angle - PI / 2.0).abs());
        }
    }
    let valence = vertex_valence(PI / 12.0).unwrap();
    let base = double_cover(&build_cone_torus(4, 4, Epsilon::critical()).unwrap());
    let lengths_ok = [0.25, 0.5, 1.0, 2.0]
        .iter()
        .all(|&a| (build_xa(&base, a).unwrap().boundary_length - 12.0 * a).abs() < 1e-12);
    let cusp = cusp_limit_check(&base, &[2.0, 1.0, 0.5, 0.25, 0.1, 0.01, 0.001]).unwrap();
    let pass =
        worst_angle <= 1e-9 && worst_side <= 1e-9 && valence == 12 && lengths_ok && cusp.ok();
    report(
        10,
        "right-angled hexagon",
        pass,
        &format!(
            "max angle err {worst_angle:.2e}, max side err {worst_side:.2e}, N = {valence}, \
             boundary 12a = {lengths_ok}, t(0.001) = {:.4}",
            cusp.samples.last().unwrap().t
        ),
    );
    assert!(pass);
}

fn bolza(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_bolza"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn criterion_11_cli_persistence() {
    let mut notes = vec![];

    // JSON round trip against the in-memory descriptor.
    let out = bolza(&[
        "construct",
        "--m",
        "4",
        "--n",
        "5",
        "--eps",
        "pi/12",
        "--json",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: Document = serde_json::from_str(&text).unwrap();
    let surface = double_cover(&build_cone_torus(4, 5, Epsilon::critical()).unwrap());
    let in_memory = SurfaceJson::from_descriptor(&surface);
    let round_trip = parsed.surface.as_ref() == Some(&in_memory)
        && serde_json::from_str::<Document>(&parsed.to_json()).unwrap() == parsed
        && parsed.to_json() == text
        && matches!(parsed.certificates.first(), Some(Certificate::Filling(_)));
    notes.push(format!("round trip {round_trip}"));

    // Byte-identical output across runs.
    let runs: Vec<&[&str]> = vec![
        &[
            "verify", "--m", "4", "--n", "4", "--eps", "pi/12", "--depth", "4", "--json",
        ],
        &["parity", "--m", "4", "--n", "5", "--seed", "7", "--json"],
        &[
            "render",
            "disk-development",
            "--eps",
            "pi/24",
            "--depth",
            "3",
        ],
    ];
    let deterministic = runs.iter().all(|args| {
        let (a, b) = (bolza(args), bolza(args));
        a.status.success() && a.stdout == b.stdout
    });
    notes.push(format!("deterministic {deterministic}"));

    // Well-formed SVG 1.1.
    let mut svg_ok = true;
    for (args, disk) in [
        (
            vec![
                "render",
                "flat-torus",
                "--m",
                "4",
                "--n",
                "5",
                "--p",
                "1",
                "--q",
                "1",
            ],
            false,
        ),
        (
            vec![
                "render",
                "disk-development",
                "--eps",
                "pi/12",
                "--depth",
                "3",
            ],
            true,
        ),
        (vec!["render", "hexagon", "--a", "1"], true),
    ] {
        let out = bolza(&args);
        let svg = String::from_utf8(out.stdout).unwrap();
        let ok = match roxmltree::Document::parse(&svg) {
            Ok(doc) => {
                let root = doc.root_element();
                root.tag_name().name() == "svg"
                    && root.tag_name().namespace() == Some("http://www.w3.org/2000/svg")
                    && root.attribute("version") == Some("1.1")
                    && (!disk || root.attribute("viewBox") == Some("0 0 1000 1000"))
            }
            Err(_) => false,
        };
        svg_ok &= ok && out.status.success();
    }
    notes.push(format!("svg well-formed {svg_ok}"));

    let pass = round_trip && deterministic && svg_ok;
    report(11, "CLI and persistence", pass, &notes.join(", "));
    assert!(pass);
}
