//! Command-line front end: argument definitions, data ingestion and the
//! command implementations behind the `divdiff` binary.

pub mod commands;
pub mod data;
pub mod funcs;
pub mod reproduce;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "divdiff", version, about = "Divided-difference interpolation, differentiation and quadrature")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Exact rational arithmetic; inputs are parsed as exact decimals or p/q.
    #[arg(long, global = true)]
    pub rational: bool,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// True values for error columns: a function name or an x,y file.
    #[arg(long, global = true, value_name = "NAME|FILE")]
    pub reference: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a divided-difference table.
    Table(TableArgs),
    /// Interpolate at a list of points.
    Interp(InterpArgs),
    /// Estimate a derivative.
    Diff(DiffArgs),
    /// Estimate an integral.
    Quad(QuadArgs),
    /// Print finite-difference weights for offsets -m..n.
    Stencil(StencilArgs),
    /// Recompute the reference cases and report each one.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Newton,
    New,
    Combined,
    Integer,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// CSV file of x,y rows, or a JSON table previously written with --json.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "newton")]
    pub scheme: SchemeArg,
    /// Split parameter; defaults to n.
    #[arg(long)]
    pub r: Option<usize>,
    /// Integer scheme over signed positions -M..N (values in ascending order).
    #[arg(long, value_name = "M,N")]
    pub signed: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    /// Ascending x.
    Ascending,
    /// Descending x.
    Descending,
    /// Centre node first, then alternating right and left neighbours.
    Central,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    NewForward,
    NewBackward,
    Stirling,
    Bessel,
    Everett,
    Steffensen,
}

#[derive(Debug, Args)]
pub struct InterpArgs {
    pub input: PathBuf,
    /// Split parameter: r = 0 is Lagrange, r = n is Newton.
    #[arg(long)]
    pub r: usize,
    /// Comma-separated evaluation points.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub x: Vec<String>,
    /// Use only sorted rows START..END (end exclusive).
    #[arg(long, value_name = "START:END")]
    pub rows: Option<String>,
    /// Node order used by the prefix and the tail.
    #[arg(long, value_enum, default_value = "ascending")]
    pub order: OrderArg,
    /// Centre node for --order central and --variant (defaults to the middle node).
    #[arg(long, allow_hyphen_values = true)]
    pub center: Option<String>,
    /// Central-difference variant on evenly spaced data.
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Replace the tail by a least-squares polynomial of this degree.
    #[arg(long)]
    pub tail: Option<usize>,
    /// Tail polynomial in ascending powers of the position s, instead of fitting.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub tail_coeffs: Option<Vec<f64>>,
    /// Position origin for the tail; defaults to the first node in the chosen order.
    #[arg(long, allow_hyphen_values = true)]
    pub tail_origin: Option<f64>,
    /// Position step for the tail; defaults to the signed node spacing.
    #[arg(long, allow_hyphen_values = true)]
    pub tail_step: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Recursive,
    Lincomb,
    Series,
}

#[derive(Debug, Args)]
pub struct DiffArgs {
    /// CSV file of x,y rows (omit with --grid).
    pub input: Option<PathBuf>,
    /// Evenly spaced samples of --func at a + ih for i = -m..n.
    #[arg(long, value_name = "A,H,M,N", allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[arg(long)]
    pub func: Option<String>,
    /// Derivative order.
    #[arg(long, short)]
    pub t: usize,
    /// Evaluation point (defaults to a for --grid).
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<String>,
    #[arg(long, value_enum, default_value = "recursive")]
    pub method: MethodArg,
    /// Known f(at), used by the recursive and subset methods.
    #[arg(long, allow_hyphen_values = true)]
    pub fx: Option<String>,
    /// Series terms for --method series.
    #[arg(long, default_value_t = 500)]
    pub terms: usize,
    /// Also print operation counts.
    #[arg(long)]
    pub ops: bool,
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    /// CSV file of x,y rows (omit with --grid).
    pub input: Option<PathBuf>,
    /// Closed rule over a..a+nh, or a-nh..a+nh with --central.
    #[arg(long, value_name = "A,H,N", allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[arg(long)]
    pub func: Option<String>,
    /// Symmetric rule about the centre.
    #[arg(long)]
    pub central: bool,
    /// Composite rule: this many panels of the n-interval rule.
    #[arg(long)]
    pub panels: Option<usize>,
    /// Uneven data: integrate from this point...
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<String>,
    /// ...over this width (defaults to the gap between the bracketing nodes).
    #[arg(long, allow_hyphen_values = true)]
    pub width: Option<String>,
}

#[derive(Debug, Args)]
pub struct StencilArgs {
    /// Points behind the anchor.
    pub m: usize,
    /// Points ahead of the anchor.
    pub n: usize,
    /// Derivative order.
    pub t: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Table5,
    Table6,
    Table7,
    Table8,
    Table9,
    Stencils,
    Quadweights,
    All,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum, default_value = "all")]
    pub which: Which,
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    CasesFailed,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<Status> {
    let g = &cli.global;
    match &cli.command {
        Command::Table(a) => commands::table(g, a, out),
        Command::Interp(a) => commands::interp(g, a, out),
        Command::Diff(a) => commands::diff(g, a, out),
        Command::Quad(a) => commands::quad(g, a, out),
        Command::Stencil(a) => commands::stencil(g, a, out),
        Command::Reproduce(a) => reproduce::run(g, a.which, out),
    }
}
