//! `kappa`: κ-vectors, Betti tables and smoothability verdicts for spaces of
//! quadrics.
//!
//! Exit codes: 0 on success, 1 on input or usage errors, 2 when the computed
//! verdict is "obstructed".

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kappa::linalg::FieldSpec;

#[derive(Parser, Debug)]
#[command(
    name = "kappa",
    version,
    about = "κ-vectors and smoothability obstructions for spaces of quadrics"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for every randomized step (decimal or 0x-prefixed hex).
    #[arg(long, value_parser = parse_seed, default_value = "0xC0FFEE", global = true)]
    pub seed: u64,
    /// Print extra detail (timings go to stderr).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// κ-vector, Betti table and verdict of a space document.
    Compute(ComputeArgs),
    /// Build the quadric space of a point configuration (CSV or JSON) and report on it.
    FromPoints(FromPointsArgs),
    /// Reproduce a table.
    #[command(subcommand)]
    Table(TableCommand),
    /// κ-vector frequencies of random spaces over a prime field.
    Sample(SampleArgs),
    /// Run a built-in example (use --list to see the names).
    Example(ExampleArgs),
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    pub input: PathBuf,
    /// Override the document's field: "Q" or "fp:<prime>".
    #[arg(long, value_parser = parse_field)]
    pub field: Option<FieldSpec>,
}

#[derive(Args, Debug)]
pub struct FromPointsArgs {
    pub input: PathBuf,
    #[arg(long, value_parser = parse_field)]
    pub field: Option<FieldSpec>,
    /// Also write the space document to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum TableCommand {
    /// Jacobian-rank lower bound for the locus of nets from d + 4 points.
    Dimension {
        #[arg(long, value_parser = parse_table_d)]
        d: usize,
    },
    /// Deformation rows for a net of quadrics in 5 variables.
    Deform153 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldSpec>,
    },
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub e: usize,
    /// The prime p of the field 𝔽_p (at least 5).
    #[arg(long = "fp", default_value_t = 10007)]
    pub p: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
}

#[derive(Args, Debug)]
pub struct ExampleArgs {
    #[arg(required_unless_present = "list")]
    pub name: Option<String>,
    #[arg(long)]
    pub list: bool,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("bad seed {s:?}: {e}"))
}

fn parse_table_d(s: &str) -> Result<usize, String> {
    let d: usize = s.parse().map_err(|e| format!("{e}"))?;
    if d < 4 {
        return Err(format!("the dimension table starts at d = 4, got {d}"));
    }
    Ok(d)
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: kappa::linalg::LinalgError| e.to_string())
}

/// What a successful command found.
pub enum Outcome {
    Done,
    Obstructed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Obstructed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
