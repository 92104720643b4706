//! `holonome`: run holonomic-gate experiments from a JSON config.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 violated
//! numerical contract (the report is still written).

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::ExperimentConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("numerical contract violated: {0}")]
    Contract(String),
    #[error("{0}")]
    Io(String),
}

impl From<holonome_core::Error> for CliError {
    fn from(e: holonome_core::Error) -> Self {
        use holonome_core::Error as E;
        match e {
            E::NotHermitian { .. } | E::NotUnitary { .. } | E::NotOrthonormal { .. } | E::TraceDrift { .. } | E::NoConvergence { .. } => {
                CliError::Contract(e.to_string())
            }
            E::DimensionMismatch { .. } | E::SingularFrame { .. } | E::InvalidLaws(_) | E::InvalidSchedule(_) | E::InvalidArgument(_) => {
                CliError::Validation(e.to_string())
            }
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Contract(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(name = "holonome", version, about = "Synthesize, propagate and benchmark holonomic quantum gates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the synthesized Hamiltonians against both holonomy conditions.
    Verify(RunArgs),
    /// Propagate one gate and compare it with its target.
    Gate(RunArgs),
    /// Average fidelity of the OP and OSSP gates over a decoherence grid.
    Sweep(RunArgs),
    /// OP and OSSP gates side by side.
    Compare(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON experiment config.
    #[arg(long)]
    config: PathBuf,
    /// Directory for reports.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Override both integrator step counts.
    #[arg(long)]
    steps: Option<usize>,
    /// Reserved; every pipeline is deterministic. Recorded in reports.
    #[arg(long)]
    seed: Option<u64>,
}

fn run(cli: Cli) -> Result<Vec<String>, CliError> {
    let (name, args, pipeline): (&str, RunArgs, fn(&ExperimentConfig, Option<u64>) -> Result<commands::Outcome, CliError>) =
        match cli.command {
            Command::Verify(a) => ("verify", a, commands::verify),
            Command::Gate(a) => ("gate", a, commands::gate),
            Command::Sweep(a) => ("sweep", a, commands::sweep),
            Command::Compare(a) => ("compare", a, commands::compare),
        };
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if let Some(steps) = args.steps {
        cfg.set_steps(steps)?;
    }
    let outcome = pipeline(&cfg, args.seed)?;
    for (file, body) in &outcome.files {
        output::write_file(&args.out, file, body)?;
    }
    let mut lines = vec![format!("holonome {name}")];
    lines.extend(outcome.summary);
    lines.extend(outcome.files.iter().map(|(f, _)| format!("wrote {}", args.out.join(f).display())));
    if !outcome.violations.is_empty() {
        for l in &lines {
            println!("{l}");
        }
        return Err(CliError::Contract(outcome.violations.join("; ")));
    }
    Ok(lines)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
