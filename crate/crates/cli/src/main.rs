//! `supportminors` command-line tool.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 computation refused by a
//! cap, 3 verification mismatch.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use supportminors::macaulay::DEFAULT_MATRIX_CAP;
use supportminors::minrank::DEFAULT_ENUMERATION_CAP;

#[derive(Debug, Parser)]
#[command(
    name = "supportminors",
    version,
    about = "SupportMinors modeling of MinRank over prime fields"
)]
struct Cli {
    /// Print line-oriented key=value output instead of a report.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Solve by linearization at b = 1 or 2.
    Solve(SolveArgs),
    /// Compare observed ranks and syzygy dimensions with the closed forms.
    Check(CheckArgs),
    /// Closed-form counts, solvability and cost model for a parameter set.
    Estimate(EstimateArgs),
    /// Exhaustive search over projective points.
    Brute(BruteArgs),
}

#[derive(Debug, Clone, Args)]
struct ParamArgs {
    /// Field size (a prime below 2^31).
    #[arg(long, default_value_t = 32003)]
    q: u64,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Number of matrices in the pencil.
    #[arg(long = "K")]
    k: Option<usize>,
    /// Target rank.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Plant a rank-r solution.
    #[arg(long)]
    planted: bool,
}

#[derive(Debug, Clone, Args)]
struct SourceArgs {
    /// Read the instance from a file; `<file>.witness` is used when present.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Output file; the planted witness goes to `<file>.witness`.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Degree in x; defaults to the first degree predicted solvable, else 2.
    #[arg(long)]
    b: Option<usize>,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap_enum: u128,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MATRIX_CAP)]
    cap_matrix: u128,
    /// Set the Plücker coordinate with this colex rank to one.
    #[arg(long, value_name = "T")]
    fix_pluecker: Option<usize>,
    /// Exit 3 unless a verified solution is found.
    #[arg(long)]
    assert: bool,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Check only this degree.
    #[arg(long)]
    b: Option<usize>,
    /// Number of consecutive seeds starting at --seed.
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MATRIX_CAP)]
    cap_matrix: u128,
    /// Exit 3 on any mismatch.
    #[arg(long)]
    assert: bool,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long = "K")]
    k: usize,
    #[arg(long)]
    r: usize,
    /// Recorded in the report only; the counts do not depend on q.
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Debug, Args)]
struct BruteArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap_enum: u128,
    /// Exit 3 unless the witness is found.
    #[arg(long)]
    assert: bool,
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
    let machine = cli.machine;
    let result = match cli.command {
        Command::Gen(a) => commands::gen(&a, machine),
        Command::Solve(a) => commands::solve(&a, machine),
        Command::Check(a) => commands::check(&a, machine),
        Command::Estimate(a) => commands::estimate(&a, machine),
        Command::Brute(a) => commands::brute(&a, machine),
    };
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code_for(&e) as u8)
        }
    }
}
