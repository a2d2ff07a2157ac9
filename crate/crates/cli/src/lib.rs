//! `cha` command-line front end: `solve`, `compare` and `figures`.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod spec;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::compare::Oracle;
use crate::config::{RunArgs, RunConfig, OUTPUT_ENV};
use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "cha", version, about = "Convex hull algorithm for scalar conservation laws")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write solution clouds for each requested time and mode.
    Solve(RunArgs),
    /// Measure the dissipative solution against a reference solution.
    Compare {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum)]
        oracle: Option<Oracle>,
    },
    /// Regenerate the data and gnuplot script of a figure.
    Figures {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=9))]
        id: u8,
        /// Output directory [default: $CHA_OUTPUT_DIR, else .]
        #[arg(long)]
        output: Option<PathBuf>,
        /// Override the number of sample points.
        #[arg(long)]
        n: Option<usize>,
    },
}

/// Prints a line, treating a closed pipe as a normal end of output.
fn emit(text: &str) -> CliResult<()> {
    use std::io::Write;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::io("<stdout>", e)),
        _ => Ok(()),
    }
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Solve(args) => {
            let (config, _) = RunConfig::resolve(&args)?;
            for path in commands::solve::run(&config)? {
                emit(&path.display().to_string())?;
            }
        }
        Command::Compare { run, oracle } => {
            let (config, file) = RunConfig::resolve(&run)?;
            let oracle = match (oracle, file.oracle) {
                (Some(o), _) => o,
                (None, Some(text)) => text.parse()?,
                (None, None) => return Err(CliError::usage("compare needs --oracle")),
            };
            let (report, _) = commands::compare::run(&config, oracle)?;
            emit(&serde_json::to_string_pretty(&report).expect("report serializes"))?;
        }
        Command::Figures { id, output, n } => {
            if n.is_some_and(|n| n < 2) {
                return Err(CliError::usage("n must be at least 2"));
            }
            let dir = output
                .or_else(|| std::env::var_os(OUTPUT_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("."));
            for path in commands::figures::run(id, &dir, n)? {
                emit(&path.display().to_string())?;
            }
        }
    }
    Ok(())
}
