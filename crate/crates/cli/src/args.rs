use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "capwedge",
    version,
    about = "Capillary surfaces at wedge corners with oscillating contact angle"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Directory for CSV and JSON artifacts (created if missing).
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,

    /// JSON run configuration: `alpha`, `plus`, `minus`, `profile`, `solver`, `pmc`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Read every input angle in degrees. Outputs stay in radians.
    #[arg(long, global = true)]
    pub degrees: bool,

    /// Newton residual tolerance for `solve`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Smallest scale of the averaged-cosine sweeps.
    #[arg(long = "eps-floor", global = true)]
    pub eps_floor: Option<f64>,

    /// Step of the upward scan over fan sizes.
    #[arg(long = "beta-step", global = true)]
    pub beta_step: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Closed form when the profile structure allows it, sweep otherwise.
    Auto,
    Exact,
    Sweep,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Averaged-cosine sweep and adhesion functionals of one profile.
    Profile(ProfileArgs),
    /// Lower bounds on the side fans for a monotonicity case.
    Bounds(BoundsArgs),
    /// Recompute the closed-form identities of the two oscillating examples.
    VerifyExamples(VerifyArgs),
    /// Solve the capillary (or prescribed mean curvature) problem on a sector.
    Solve(SolveArgs),
    /// Limiting difference along the fan edge and a contradiction search.
    Blowup(BlowupArgs),
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// Profile specification file.
    #[arg(long)]
    pub profile: Option<PathBuf>,

    /// Values of b for the adhesion table.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.25, 0.5, 0.75, 1.0])]
    pub b: Vec<f64>,

    /// b used for the averaged-cosine sweep.
    #[arg(long, default_value_t = 1.0)]
    pub sweep_b: f64,

    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub plus: Option<PathBuf>,

    #[arg(long)]
    pub minus: Option<PathBuf>,

    /// I, D, ID, DI or all.
    #[arg(long, default_value = "all")]
    pub case: String,

    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub g1: Option<f64>,

    #[arg(long, allow_hyphen_values = true)]
    pub g2: Option<f64>,

    #[arg(long, value_delimiter = ',', default_values_t = vec![0.25, 0.5, 0.75])]
    pub b: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Half opening angle of the wedge.
    #[arg(long)]
    pub alpha: Option<f64>,

    #[arg(long)]
    pub kappa: Option<f64>,

    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,

    /// Constant contact angle on the wall θ = α.
    #[arg(long)]
    pub gamma_plus: Option<f64>,

    /// Constant contact angle on the wall θ = -α.
    #[arg(long)]
    pub gamma_minus: Option<f64>,

    #[arg(long)]
    pub plus: Option<PathBuf>,

    #[arg(long)]
    pub minus: Option<PathBuf>,

    #[arg(long)]
    pub r_min: Option<f64>,

    #[arg(long)]
    pub r_max: Option<f64>,

    #[arg(long)]
    pub m: Option<usize>,

    #[arg(long)]
    pub n_theta: Option<usize>,

    #[arg(long)]
    pub max_iter: Option<usize>,

    /// Number of smallest radii used to extrapolate the radial limit.
    #[arg(long)]
    pub n_radii: Option<usize>,

    /// Plateau tolerance for the fan measurement.
    #[arg(long)]
    pub fan_tol: Option<f64>,

    /// Run the manufactured-solution convergence study instead.
    #[arg(long)]
    pub manufactured: bool,

    /// Mesh sizes (m = n_theta) of the convergence study.
    #[arg(long, value_delimiter = ',', default_values_t = vec![32, 64, 128])]
    pub sizes: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct BlowupArgs {
    /// Wall: + or -.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub side: String,

    /// I, D, ID or DI.
    #[arg(long, default_value = "I")]
    pub case: String,

    /// Claimed fan size.
    #[arg(long)]
    pub beta: f64,

    /// Constant contact angle of the wall.
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Profile file of the wall.
    #[arg(long)]
    pub profile: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}
