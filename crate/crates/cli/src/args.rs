use clap::{Args, Parser, Subcommand, ValueEnum};
use corquad::RuleId;

#[derive(Debug, Parser)]
#[command(
    name = "corquad",
    version,
    about = "Endpoint-corrected Simpson quadrature with Peano-kernel error bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate f over [a, b] with one of the composite rules.
    Integrate(IntegrateArgs),
    /// Error bounds for the modified Simpson rule from derivative ranges.
    Bounds(BoundsArgs),
    /// Sample the Peano kernels T_2..T_6 on [0, 1] and print their constants.
    Kernel(KernelArgs),
    /// Errors of one rule on a sequence of grids, with the fitted order.
    Converge(ConvergeArgs),
    /// Simpson and modified Simpson side by side on the same grids.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    /// Integrand, e.g. "exp(-x^2)".
    #[arg(long = "f", value_name = "EXPR")]
    pub f: String,
    /// First derivative of f; replaces automatic differentiation for f' only.
    #[arg(long = "df", value_name = "EXPR")]
    pub df: Option<String>,
    /// Lower limit.
    #[arg(short = 'a', allow_negative_numbers = true)]
    pub a: f64,
    /// Upper limit; a > b integrates in reverse.
    #[arg(short = 'b', allow_negative_numbers = true)]
    pub b: f64,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    #[command(flatten)]
    pub func: FunctionArgs,
    /// Number of panel pairs; the grid has 2n subintervals.
    #[arg(short = 'n', default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// midpoint, cmidpoint, simpson or msimpson.
    #[arg(long, default_value = "msimpson", value_parser = parse_rule)]
    pub rule: RuleId,
    /// Also compute a reference integral and the actual error.
    #[arg(long)]
    pub reference: bool,
    /// Tolerance of the reference integral.
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub func: FunctionArgs,
    /// Number of panel pairs.
    #[arg(short = 'n', default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Derivative order; all of 2..6 when omitted.
    #[arg(short = 'k', value_parser = clap::value_parser!(u8).range(2..=6))]
    pub k: Option<u8>,
    /// Known lower bound of f^(k) on [a, b]; requires -k and --upper.
    #[arg(long, allow_negative_numbers = true, requires_all = ["k", "upper"])]
    pub gamma: Option<f64>,
    /// Known upper bound of f^(k) on [a, b]; requires -k and --gamma.
    #[arg(long, allow_negative_numbers = true, requires_all = ["k", "gamma"])]
    pub upper: Option<f64>,
    /// Sample count of the derivative-range estimator.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    /// Inflation factor applied to estimated ranges.
    #[arg(long, default_value_t = 1.05)]
    pub safety: f64,
    /// Also report the actual error against a reference integral.
    #[arg(long)]
    pub reference: bool,
    /// Tolerance of the reference integral.
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    /// Kernel order; all of 2..6 when omitted.
    #[arg(short = 'k', value_parser = clap::value_parser!(u8).range(2..=6))]
    pub k: Option<u8>,
    /// Number of equally spaced sample points, endpoints included.
    #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(2..))]
    pub points: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub func: FunctionArgs,
    /// simpson or msimpson.
    #[arg(long, default_value = "msimpson", value_parser = parse_composite_rule)]
    pub rule: RuleId,
    /// Increasing panel-pair counts.
    #[arg(long = "n-list", value_delimiter = ',', default_value = "1,2,4,8,16,32,64")]
    pub n_list: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub func: FunctionArgs,
    /// Increasing panel-pair counts.
    #[arg(long = "n-list", value_delimiter = ',', default_value = "1,2,4,8,16,32,64")]
    pub n_list: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

fn parse_rule(s: &str) -> Result<RuleId, String> {
    RuleId::from_name(s)
        .ok_or_else(|| format!("unknown rule '{s}' (expected midpoint, cmidpoint, simpson or msimpson)"))
}

fn parse_composite_rule(s: &str) -> Result<RuleId, String> {
    match parse_rule(s)? {
        r @ (RuleId::Simpson | RuleId::ModifiedSimpson) => Ok(r),
        _ => Err(format!("rule '{s}' is single-panel; use simpson or msimpson")),
    }
}
