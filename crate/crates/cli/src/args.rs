use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ssfrenet_core::frenet::Tolerances;
use ssfrenet_core::ModelId;

/// Semi-symmetric Frenet frames, curve classification and geodesics in
/// E3, R3(-3) and H3(-1).
#[derive(Debug, Parser)]
#[command(name = "ssfrenet", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frenet apparatus (T, kappa, N, tau, B) at every grid point.
    Frame(CurveArgs),
    /// Order and type of a curve over the grid.
    Classify(CurveArgs),
    /// Geodesic integration, closed-form evaluation, and verification.
    Geodesic(GeodesicArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    /// Write records here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Curvature at or below this counts as zero.
    #[arg(long, default_value_t = Tolerances::default().geo)]
    pub tol_geo: f64,

    /// Torsion at or below this counts as zero.
    #[arg(long, default_value_t = Tolerances::default().tor)]
    pub tol_tor: f64,

    /// Relative spread for constant curvature or torsion.
    #[arg(long, default_value_t = Tolerances::default().constant)]
    pub tol_const: f64,

    /// Allowed |g(T,T) - 1|.
    #[arg(long, default_value_t = Tolerances::default().speed)]
    pub tol_speed: f64,
}

impl TolArgs {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            geo: self.tol_geo,
            tor: self.tol_tor,
            constant: self.tol_const,
            speed: self.tol_speed,
        }
    }
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// e3, r3m3 or h3m1.
    #[arg(long)]
    pub manifold: ModelId,

    /// Three comma-separated expressions in s, e.g. "cos(s), sin(s), 0".
    #[arg(long)]
    pub curve: String,

    /// start:end:step; the end is included when the step divides the span.
    #[arg(long, default_value = "0:1:0.1", allow_hyphen_values = true)]
    pub range: String,

    #[command(flatten)]
    pub out: OutputArgs,

    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// RK4 from --pos/--vel (or from the closed form at the range start).
    Integrate,
    /// Evaluate the closed-form family given by --c (--k, --l for h3m1).
    ClosedForm,
    /// Closed form and integration side by side, with residual and gap.
    Verify,
}

#[derive(Debug, Args)]
pub struct GeodesicArgs {
    #[arg(value_enum)]
    pub mode: Mode,

    #[arg(long)]
    pub manifold: ModelId,

    /// Closed-form constants: c1..c6 for e3, c1,c2,c3 for h3m1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub c: Option<Vec<f64>>,

    /// Additive constant of the first h3m1 component.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub k: f64,

    /// Additive constant of the second h3m1 component.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub l: f64,

    /// Initial position x,y,z.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub pos: Option<Vec<f64>>,

    /// Initial coordinate velocity.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub vel: Option<Vec<f64>>,

    /// start:end:step; the step is also the integration step.
    #[arg(long, default_value = "0:1:0.1", allow_hyphen_values = true)]
    pub range: String,

    #[command(flatten)]
    pub out: OutputArgs,

    /// Allowed |g(T,T) - 1| for the initial state and closed-form samples.
    #[arg(long, default_value_t = Tolerances::default().speed)]
    pub tol_speed: f64,
}
