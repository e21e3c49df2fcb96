//! `slowent`: command-line front end over the experiment runners.
//!
//! Every subcommand writes CSV data plus `manifest.json` into `--out` and
//! prints a one-line summary.  Usage-class failures (bad specs, domains,
//! too little data) exit 2; precision and resource exhaustion exit 3.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use slow_entropy::experiments as exp;

#[derive(Parser)]
#[command(name = "slowent", version, about = "slow-entropy experiments on rotations, interval exchanges, and step-roof suspension flows")]
struct Cli {
    /// output directory for data files and manifest.json
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convergent table and approximation certificates of a parameter
    Cf(exp::CfArgs),
    /// Exact three-gap rows of a rotation orbit
    Gaps(exp::GapsArgs),
    /// Factor complexity of the rotation coding
    Sturmian(exp::SturmianArgs),
    /// Exact complexity of a product of rotation codings
    Product(exp::ProductArgs),
    /// Structure report and refinement growth of an interval exchange
    Iet(exp::IetArgs),
    /// Metric slow entropy under Hamming-ball covering
    Entropy(exp::EntropyArgs),
    /// Slow entropy of the step-roof suspension flow
    Suspend(exp::SuspendArgs),
    /// Slow entropy of the affine skew shift
    Skew(exp::SkewArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match &cli.command {
        Command::Cf(a) => exp::run_cf(a, &cli.out),
        Command::Gaps(a) => exp::run_gaps(a, &cli.out),
        Command::Sturmian(a) => exp::run_sturmian(a, &cli.out),
        Command::Product(a) => exp::run_product(a, &cli.out),
        Command::Iet(a) => exp::run_iet(a, &cli.out),
        Command::Entropy(a) => exp::run_entropy(a, &cli.out),
        Command::Suspend(a) => exp::run_suspend(a, &cli.out),
        Command::Skew(a) => exp::run_skew(a, &cli.out),
    };
    match run {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("slowent: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
