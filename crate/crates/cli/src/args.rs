use std::path::PathBuf;

use bolza_core::Epsilon;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bolza",
    version,
    about = "Bolza-like hyperbolic surfaces: construction and certificates"
)]
pub struct Cli {
    /// Emit the JSON document instead of the human summary.
    #[arg(long, global = true)]
    pub json: bool,

    /// Tolerance for constructed-geometry comparisons.
    #[arg(long, global = true, env = "BOLZA_TOL", default_value_t = 1e-9)]
    pub tol: f64,

    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Grid {
    /// Rows; even and at least 4.
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    /// Columns; at least 4.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Deformation parameter: a decimal or a token such as `pi/12`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub eps: Epsilon,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the cone torus and its double cover; report counts and filling.
    Construct {
        #[command(flatten)]
        grid: Grid,
        /// Accept ε in (π/12, π/4), outside the validated range.
        #[arg(long)]
        allow_unvalidated: bool,
    },
    /// Sample l, x, y, sys and their derivatives along the deformation.
    Lengths {
        /// Comma-separated ε values.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eps: Vec<Epsilon>,
        /// Evenly spaced grid of this many points on [0, π/12].
        #[arg(long, conflicts_with = "eps")]
        grid: Option<usize>,
        /// Accept ε in (π/12, π/4).
        #[arg(long)]
        allow_unvalidated: bool,
    },
    /// Locate the ε at which side and short diagonal agree.
    FindEps0,
    /// Depth-bounded systole certificate.
    Verify {
        #[command(flatten)]
        grid: Grid,
        #[arg(long, default_value_t = bolza_core::verify::DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Intersection parity of (p, q) curves with the systolic arrangement.
    Parity {
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        pmax: i64,
        #[arg(long, default_value_t = 5)]
        qmax: i64,
        /// Seed for the random offsets used to check offset independence.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random offsets tried per class.
        #[arg(long, default_value_t = 8)]
        offsets: usize,
    },
    /// Right-angled hexagon H_a and the bordered surface X(a).
    Hexagon {
        /// Length of the alternating sides.
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Decreasing sequence of a for the cusp check (defaults to a, a/10, a/100).
        #[arg(long, value_delimiter = ',')]
        cusp: Vec<f64>,
    },
    /// Write an SVG figure.
    Render {
        target: RenderTarget,
        #[command(flatten)]
        grid: Grid,
        /// Highlight the straight (p, q) curve on the flat torus.
        #[arg(long, allow_hyphen_values = true, requires = "q")]
        p: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "p")]
        q: Option<i64>,
        /// Chain depth for the disk development.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Hexagon side.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderTarget {
    FlatTorus,
    DiskDevelopment,
    Hexagon,
}

impl RenderTarget {
    pub fn name(self) -> &'static str {
        match self {
            RenderTarget::FlatTorus => "flat-torus",
            RenderTarget::DiskDevelopment => "disk-development",
            RenderTarget::Hexagon => "hexagon",
        }
    }
}
