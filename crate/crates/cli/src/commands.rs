use std::f64::consts::PI;
use std::fmt::Write;

use anyhow::Context;
use bolza_core::deform;
use bolza_core::maximal::{build_xa, cusp_limit_check, hexagon_solve};
use bolza_core::parity::{
    l_path_count, parity_theorem_sweep, straight_line_count_with_offset, CurveClass,
};
use bolza_core::surface::{build_cone_torus, build_cone_torus_with, double_cover, filling_report};
use bolza_core::verify::{verify_systole_with_tol, Verdict};
use bolza_core::{Epsilon, GeomError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{Cli, Command, Grid, RenderTarget};
use crate::decimal::format_significant as fmt;
use crate::doc::*;
use crate::svg;

/// Exit status of a completed run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
}

/// What a subcommand produced: the text for stdout (or `--out`) and a status.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub output: String,
    pub status: Status,
}

impl Outcome {
    fn new(output: String, ok: bool) -> Self {
        Self {
            output,
            status: if ok {
                Status::Ok
            } else {
                Status::VerificationFailed
            },
        }
    }
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(GeomError::Domain(format!("tolerance {} must be positive", cli.tol)).into());
    }
    match &cli.command {
        Command::Construct {
            grid,
            allow_unvalidated,
        } => construct(cli, grid, *allow_unvalidated),
        Command::Lengths {
            eps,
            grid,
            allow_unvalidated,
        } => lengths(cli, eps, *grid, *allow_unvalidated),
        Command::FindEps0 => find_eps0(cli),
        Command::Verify { grid, depth } => verify(cli, grid, *depth),
        Command::Parity {
            m,
            n,
            pmax,
            qmax,
            seed,
            offsets,
        } => parity(cli, *m, *n, *pmax, *qmax, *seed, *offsets),
        Command::Hexagon { a, m, n, cusp } => hexagon(cli, *a, *m, *n, cusp),
        Command::Render {
            target,
            grid,
            p,
            q,
            depth,
            a,
        } => {
            let class = match (p, q) {
                (Some(p), Some(q)) => Some(CurveClass::new(*p, *q)?),
                _ => None,
            };
            render(cli, *target, grid, class, *depth, *a)
        }
    }
}

fn construct(cli: &Cli, grid: &Grid, allow_unvalidated: bool) -> anyhow::Result<Outcome> {
    let torus = build_cone_torus_with(grid.m, grid.n, grid.eps, allow_unvalidated)?;
    let surface = double_cover(&torus);
    let filling = filling_report(&torus);
    let doc = Document::new(
        Some(SurfaceJson::from_descriptor(&surface)),
        vec![Certificate::Filling((&filling).into())],
    );
    if cli.json {
        return Ok(Outcome::new(doc.to_json(), true));
    }
    let s = doc
        .surface
        .as_ref()
        .expect("construct always has a surface");
    let mut out = String::new();
    writeln!(
        out,
        "S_g(eps) on a {}x{} grid at eps = {}",
        s.m, s.n, s.epsilon
    )?;
    writeln!(out, "genus                {}", s.genus)?;
    writeln!(out, "branch points        {}", s.branch_points)?;
    writeln!(out, "side l               {}", s.side_length)?;
    writeln!(out, "short diagonal x     {}", s.short_diagonal)?;
    writeln!(out, "width y              {}", s.width)?;
    writeln!(out, "systole              {}", s.systole)?;
    writeln!(out, "systolic geodesics   {}", s.systolic_count)?;
    writeln!(out, "decomposition        {}", face_name(filling.face_type))?;
    writeln!(out, "total area           {}", s.total_area)?;
    writeln!(
        out,
        "euler characteristic {} ({} - {} + {})",
        s.euler.characteristic, s.euler.vertices, s.euler.edges, s.euler.faces
    )?;
    writeln!(out, "systolic curves fill {}", yes_no(filling.fills))?;
    if !torus.epsilon.check_validated().is_ok() {
        writeln!(out, "note: eps lies outside the validated range [0, pi/12]")?;
    }
    Ok(Outcome::new(out, true))
}

fn face_name(face: bolza_core::surface::FaceType) -> &'static str {
    match face {
        bolza_core::surface::FaceType::Squares => "squares",
        bolza_core::surface::FaceType::Triangles666 => "(6,6,6)-triangles",
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn lengths(
    cli: &Cli,
    eps: &[Epsilon],
    grid: Option<usize>,
    allow_unvalidated: bool,
) -> anyhow::Result<Outcome> {
    let tokens: Vec<Epsilon> = match grid {
        Some(0) => return Err(GeomError::Domain("grid needs at least one point".into()).into()),
        Some(1) => vec![Epsilon::ZERO],
        Some(k) => {
            let den = 12 * (k as i64 - 1);
            (0..k as i64).map(|i| Epsilon::pi_frac(i, den)).collect()
        }
        None if eps.is_empty() => vec![Epsilon::ZERO, Epsilon::pi_frac(1, 24), Epsilon::critical()],
        None => eps.to_vec(),
    };
    let samples = tokens
        .iter()
        .map(|&e| {
            let s = if allow_unvalidated {
                deform::sample_unvalidated(e)
            } else {
                deform::sample(e)
            }?;
            Ok(SampleJson::new(e, &s))
        })
        .collect::<bolza_core::Result<Vec<_>>>()?;
    let increasing = deform::is_strictly_increasing(samples.iter().map(|s| s.sys.get()));
    let doc = Document::new(
        None,
        vec![Certificate::Lengths(LengthsJson {
            samples,
            sys_strictly_increasing: increasing,
        })],
    );
    if cli.json {
        return Ok(Outcome::new(doc.to_json(), true));
    }
    let Certificate::Lengths(report) = &doc.certificates[0] else {
        unreachable!()
    };
    let mut out = String::new();
    writeln!(
        out,
        "{:<22} {:<18} {:<18} {:<18} {:<18}",
        "eps", "l", "x", "y", "sys"
    )?;
    for s in &report.samples {
        writeln!(
            out,
            "{:<22} {:<18} {:<18} {:<18} {:<18}",
            s.epsilon,
            s.l.to_string(),
            s.x.to_string(),
            s.y.to_string(),
            s.sys.to_string()
        )?;
    }
    writeln!(out, "sys strictly increasing: {}", yes_no(increasing))?;
    Ok(Outcome::new(out, true))
}

const EPS0_TOL: f64 = 1e-10;

fn find_eps0(cli: &Cli) -> anyhow::Result<Outcome> {
    let b = deform::find_epsilon0_detailed()?;
    let cert = Epsilon0Json::new(&b, EPS0_TOL);
    let ok = cert.matches;
    if cli.json {
        let doc = Document::new(None, vec![Certificate::Epsilon0(cert)]);
        return Ok(Outcome::new(doc.to_json(), ok));
    }
    let mut out = String::new();
    writeln!(out, "eps0 = {}", fmt(b.root))?;
    if ok {
        writeln!(out, "= π/12 (|Δ| < 1e−10)")?;
    } else {
        writeln!(out, "≠ π/12 (|Δ| = {})", cert.delta)?;
    }
    writeln!(
        out,
        "bisection steps {}, bracket width {}",
        b.iterations, cert.bracket_width
    )?;
    writeln!(out, "l - x at eps0 {}", cert.l_minus_x)?;
    Ok(Outcome::new(out, ok))
}

fn verify(cli: &Cli, grid: &Grid, depth: usize) -> anyhow::Result<Outcome> {
    let cert = verify_systole_with_tol(grid.m, grid.n, grid.eps, depth, cli.tol)?;
    let ok = cert.verdict != Verdict::Fail;
    let json = SystoleJson::from(&cert);
    if cli.json {
        let surface = double_cover(&build_cone_torus(grid.m, grid.n, grid.eps)?);
        let doc = Document::new(
            Some(SurfaceJson::from_descriptor(&surface)),
            vec![Certificate::Systole(Box::new(json))],
        );
        return Ok(Outcome::new(doc.to_json(), ok));
    }
    let mut out = String::new();
    writeln!(out, "systole certificate ({})", json.label)?;
    writeln!(
        out,
        "grid {}x{}, eps = {}, depth {}",
        json.m, json.n, json.epsilon, json.depth
    )?;
    writeln!(out, "claimed systole        {}", json.claimed_systole)?;
    writeln!(
        out,
        "min(l, x)              {}",
        json.closed_form_min_segment
    )?;
    match &json.min_saddle_connection {
        Some(v) => writeln!(
            out,
            "shortest saddle arc    {} ({} witnesses, {} chains)",
            v,
            json.witnesses.len(),
            json.chains_explored
        )?,
        None => writeln!(out, "shortest saddle arc    not searched (depth < 2)")?,
    }
    let c = &json.crossing;
    writeln!(
        out,
        "strip bound            {}·y = {} vs {} (margin {}, {})",
        c.multiple,
        fmt(c.multiple as f64 * c.width.get()),
        c.claimed_systole,
        c.margin,
        if c.holds { "holds" } else { "fails" }
    )?;
    writeln!(
        out,
        "smallest strip count   {}",
        json.smallest_strip_multiple
    )?;
    for f in &json.failures {
        writeln!(out, "violated: {f}")?;
    }
    writeln!(out, "verdict {}", verdict_name(json.verdict))?;
    Ok(Outcome::new(out, ok))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Inconclusive => "INCONCLUSIVE",
    }
}

fn parity(
    cli: &Cli,
    m: usize,
    n: usize,
    pmax: i64,
    qmax: i64,
    seed: u64,
    offsets: usize,
) -> anyhow::Result<Outcome> {
    let report = parity_theorem_sweep(m, n, pmax, qmax)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut checked, mut mismatches) = (0, 0);
    for e in &report.entries {
        let class = CurveClass::new(e.p, e.q)?;
        for _ in 0..offsets {
            let o = [rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)];
            match straight_line_count_with_offset(class, m, n, o) {
                Ok(c) => {
                    checked += 1;
                    if c.total() != e.count {
                        mismatches += 1;
                    }
                }
                Err(GeomError::Degenerate(_)) => {}
                Err(other) => return Err(other.into()),
            }
        }
    }
    let json = ParityJson::new(&report, seed, checked, mismatches);
    let ok = json.violations == 0 && mismatches == 0;
    if cli.json {
        let doc = Document::new(None, vec![Certificate::Parity(json)]);
        return Ok(Outcome::new(doc.to_json(), ok));
    }
    let mut out = String::new();
    writeln!(out, "{:>4} {:>4} {:>8} {:>8}", "p", "q", "count", "L-path")?;
    for e in &json.classes {
        let class = CurveClass::new(e.p, e.q)?;
        let l = if e.p > 0 && e.q > 0 {
            l_path_count(class, m, n)?.total.to_string()
        } else {
            "-".into()
        };
        writeln!(out, "{:>4} {:>4} {:>8} {:>8}", e.p, e.q, e.count, l)?;
    }
    writeln!(
        out,
        "{}x{} grid, {} classes with |p| <= {pmax}, |q| <= {qmax}: {} violations",
        m,
        n,
        json.classes.len(),
        json.violations
    )?;
    writeln!(
        out,
        "offset independence: {checked} offsets checked, {mismatches} mismatches"
    )?;
    Ok(Outcome::new(out, ok))
}

fn hexagon(cli: &Cli, a: f64, m: usize, n: usize, cusp: &[f64]) -> anyhow::Result<Outcome> {
    let hex = hexagon_solve(a)?;
    let base = double_cover(&build_cone_torus(m, n, Epsilon::critical())?);
    let x = build_xa(&base, a)?;
    let sequence = if cusp.is_empty() {
        vec![a, a / 10.0, a / 100.0]
    } else {
        cusp.to_vec()
    };
    let report = cusp_limit_check(&base, &sequence)?;

    let worst_angle = hex
        .measured_angles()
        .iter()
        .map(|t| (t - PI / 2.0).abs())
        .fold(0.0, f64::max);
    let worst_side = hex
        .measured_sides()
        .iter()
        .enumerate()
        .map(|(i, s)| (s - if i % 2 == 0 { a } else { hex.t.value() }).abs())
        .fold(0.0, f64::max);
    let ok = worst_angle < cli.tol && worst_side < cli.tol && report.ok();

    if cli.json {
        let doc = Document::new(
            Some(SurfaceJson::from_descriptor(&base)),
            vec![
                Certificate::Hexagon((&hex).into()),
                Certificate::BoundedSurface((&x).into()),
                Certificate::Cusp((&report).into()),
            ],
        );
        return Ok(Outcome::new(doc.to_json(), ok));
    }
    let mut out = String::new();
    writeln!(out, "H_a with a = {}", fmt(a))?;
    writeln!(out, "t                    {}", fmt(hex.t.value()))?;
    writeln!(out, "max |angle - pi/2|   {worst_angle:.3e}")?;
    writeln!(out, "max side error       {worst_side:.3e}")?;
    writeln!(out, "area                 {}", fmt(hex.area()))?;
    writeln!(out, "X(a) over a {m}x{n} grid (genus {})", base.genus)?;
    writeln!(out, "boundary circles     {}", x.boundary_count)?;
    writeln!(out, "triangles per vertex {}", x.valence)?;
    writeln!(out, "boundary length      {}", fmt(x.boundary_length))?;
    writeln!(out, "hexagons             {}", x.hexagon_count)?;
    writeln!(out, "cusp limit:")?;
    for s in &report.samples {
        writeln!(
            out,
            "  a = {:<18} t = {:<18} boundary = {}",
            fmt(s.a),
            fmt(s.t),
            fmt(s.boundary_length)
        )?;
    }
    writeln!(
        out,
        "t increasing {}, boundary decreasing {}",
        yes_no(report.t_increasing),
        yes_no(report.lengths_decreasing)
    )?;
    Ok(Outcome::new(out, ok))
}

fn render(
    cli: &Cli,
    target: RenderTarget,
    grid: &Grid,
    class: Option<CurveClass>,
    depth: usize,
    a: f64,
) -> anyhow::Result<Outcome> {
    let svg = match target {
        RenderTarget::FlatTorus => {
            bolza_core::surface::check_dims(grid.m, grid.n)?;
            svg::flat_torus(grid.m, grid.n, class)
        }
        RenderTarget::DiskDevelopment => {
            let torus = build_cone_torus(grid.m, grid.n, grid.eps)?;
            svg::disk_development(&torus, depth)?
        }
        RenderTarget::Hexagon => svg::hexagon(&hexagon_solve(a)?),
    };
    if !cli.json {
        return Ok(Outcome::new(svg, true));
    }
    // In JSON mode the figure goes to --out and the document to stdout.
    let (path, embedded) = match &cli.out {
        Some(p) => {
            std::fs::write(p, &svg).with_context(|| format!("writing {}", p.display()))?;
            (Some(p.display().to_string()), None)
        }
        None => (None, Some(svg.clone())),
    };
    let doc = Document::new(
        None,
        vec![Certificate::Render(RenderJson {
            target: target.name().into(),
            path,
            bytes: svg.len(),
            svg: embedded,
        })],
    );
    Ok(Outcome::new(doc.to_json(), true))
}

/// Whether render wrote its own file, so the caller must not overwrite it.
pub fn writes_own_file(cli: &Cli) -> bool {
    cli.json && matches!(cli.command, Command::Render { .. })
}

/// Run `cli`, emit the output to `--out` or `stdout`, report errors on `stderr`
/// and return the exit code.
pub fn execute(cli: &Cli, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32 {
    let result = run(cli);
    let code = exit_code(&result);
    match result {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) if !writes_own_file(cli) => std::fs::write(path, &outcome.output),
                _ => stdout.write_all(outcome.output.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 1;
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
        }
    }
    code
}

/// Process exit code: 0 success, 1 internal failure, 2 invalid input, 3 failed verification.
pub fn exit_code(result: &anyhow::Result<Outcome>) -> i32 {
    match result {
        Ok(o) if o.status == Status::Ok => 0,
        Ok(_) => 3,
        Err(e) if e.downcast_ref::<GeomError>().is_some() => 2,
        Err(_) => 1,
    }
}
