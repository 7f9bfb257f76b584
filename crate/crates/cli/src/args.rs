use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "minsurf", version, about = "Minimal graphs in R^4: residual checks, potentials, curvature and a discrete solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check residual identities at quasi-random interior points.
    Verify(VerifyArgs),
    /// Export points or a mesh of a chart or conformal patch.
    Sample(SampleArgs),
    /// Integrate the Lagrange potential of a minimal graph in R^3.
    Potential(PotentialArgs),
    /// Gauss map report and hyperplane fit.
    Gauss(GaussArgs),
    /// Total curvature table of a conformal patch.
    Curvature(CurvatureArgs),
    /// Minimize the discrete area with Dirichlet data.
    Solve(SolveArgs),
    /// List registry keys.
    List(ListArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Obj,
}

/// Registry key plus parameter overrides.
#[derive(Debug, Args)]
pub struct ChartArgs {
    /// Registry key, e.g. `scherk_doubly:lambda=0.7` or `sigmaN:2`.
    #[arg(long)]
    pub chart: String,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Default, Args)]
pub struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long = "N")]
    pub n_param: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub chart: ChartArgs,
    /// Number of sample points.
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    /// Tolerance for the exact-jet residuals.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Osserman coefficient; defaults to the chart's own.
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Start index of the Halton sequence.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Registry key of a chart.
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    pub chart: Option<String>,
    /// Registry key of a conformal patch.
    #[arg(long)]
    pub family: Option<String>,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Points for csv/json; grid resolution per side for obj.
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Coordinates kept in OBJ output, three of `x`, `y`, `f`, `g`.
    #[arg(long, default_value = "xyf")]
    pub project: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    #[command(flatten)]
    pub chart: ChartArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub y: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub base_x: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub base_y: f64,
    /// Quadrature panel length.
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    /// Largest accepted disagreement between the two integration paths.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GaussArgs {
    #[command(flatten)]
    pub chart: ChartArgs,
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    /// Fit a hyperplane to the sampled Gauss map.
    #[arg(long)]
    pub fit: bool,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CurvatureArgs {
    /// Registry key of a conformal patch.
    #[arg(long)]
    pub family: String,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Truncation parameters, comma separated.
    #[arg(long = "T", value_delimiter = ',', default_value = "4,6,8")]
    pub t: Vec<f64>,
    /// Gauss–Legendre nodes per direction.
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StepRuleArg {
    Bb,
    Backtracking,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Chart supplying Dirichlet data and the reference solution.
    #[arg(long, required_unless_present = "input")]
    pub chart: Option<String>,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Grid file (csv or json) used as boundary data and warm start.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Box `xmin,xmax,ymin,ymax` for chart-driven runs.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub bounds: Option<Vec<f64>>,
    #[arg(long, default_value_t = 33)]
    pub nx: usize,
    #[arg(long, default_value_t = 33)]
    pub ny: usize,
    #[arg(long, default_value_t = 200_000)]
    pub max_iter: usize,
    /// Sup-norm of the area gradient at which to stop.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = StepRuleArg::Bb)]
    pub step_rule: StepRuleArg,
    /// Where to write the solved grid (csv or json by extension).
    #[arg(long)]
    pub grid_out: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ListArgs {
    #[command(flatten)]
    pub output: OutputArgs,
}
