//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ckr-gap", version, about = "Integrality-gap instances for the CKR multiway cut relaxation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write an instance (J, I1..I4 or combined) as JSON or DIMACS-like text.
    Gen(GenArgs),
    /// Evaluate a named or stored cut on an instance.
    EvalCut(EvalCutArgs),
    /// Max-flow separating each terminal from its opposite side.
    MinCut(MinCutArgs),
    /// Exact minimum over non-opposite cuts.
    Enumerate(EnumerateArgs),
    /// Exhaustive monochromatic-hyperedge oracles.
    SpernerVerify(SpernerArgs),
    /// Maximize the asymptotic lower bound over c and the multipliers.
    Optimize(OptimizeArgs),
    /// Limitation certificates and the beta maximization.
    Limits(LimitsArgs),
    /// Run a reproduction suite; exits 0 iff every check passes.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InstanceFormat {
    Json,
    Dimacs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Bnb,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Red-triangle size c, as a decimal or p/q.
    #[arg(long)]
    pub c: Option<String>,
    /// Multipliers a,b,c,d (decimals or p/q), summing to 1.
    #[arg(long)]
    pub lambda: Option<String>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Report format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Omit the elapsed-time field so reports are byte-identical across runs.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Instance file (JSON or DIMACS-like, detected from content).
    #[arg(long, conflicts_with = "what")]
    pub instance: Option<PathBuf>,
    /// Build an instance instead: J, I1, I2, I3, I4 or combined.
    #[arg(long)]
    pub what: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<u32>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// J, I1, I2, I3, I4 or combined.
    pub what: String,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: InstanceFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also list edges of weight zero.
    #[arg(long)]
    pub include_zero_edges: bool,
}

#[derive(Debug, Args)]
pub struct EvalCutArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Q0, P_ext, P_prime, P3 or lemma5tight:<alpha>.
    #[arg(long, conflicts_with = "cut_file")]
    pub cut: Option<String>,
    /// Labeling JSON file.
    #[arg(long)]
    pub cut_file: Option<PathBuf>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct MinCutArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Terminal 1..k; all terminals when omitted.
    #[arg(long)]
    pub terminal: Option<usize>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "bnb")]
    pub mode: Mode,
    /// Labelings (exhaustive) or search nodes (bnb) allowed.
    #[arg(long, default_value_t = crate::suite::DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Also check the closed-form bound against the minimum (combined only).
    #[arg(long)]
    pub verify_bound: bool,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct SpernerArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: u32,
    /// Allow any label on the facet x_k = 0.
    #[arg(long)]
    pub face_restricted: bool,
    #[arg(long, default_value_t = crate::suite::DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// Force lambda3 = 0.
    #[arg(long)]
    pub lambda3_zero: bool,
    #[arg(long, default_value_t = 999)]
    pub c_steps: u32,
    #[arg(long, default_value_t = 8)]
    pub refine_rounds: u32,
    #[arg(long, default_value_t = 6)]
    pub decimals: usize,
    /// Evaluate only this point (requires --c and --lambda).
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct LimitsArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Evaluate the cuts on combine(params, n) instead of the n → ∞ formulas.
    #[arg(long)]
    pub n: Option<u32>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// constants, lemmas, enumeration, formats or all.
    #[arg(default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = crate::suite::DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[command(flatten)]
    pub report: ReportArgs,
}
