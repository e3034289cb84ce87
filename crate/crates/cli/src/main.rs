//! `bipolar`: compile, query and check bipolar possibilistic models.
//!
//! Exit status: 0 success, 2 usage error, 3 parse error, 4 validation
//! failure, 5 inconsistency, 6 variable limit exceeded, 7 I/O error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use bipolar_core::logic::DEFAULT_MAX_VARS;
use clap::{Parser, Subcommand};

use commands::{Failure, NetMode, Outcome, Settings};
use output::Format;

#[derive(Debug, Parser)]
#[command(name = "bipolar", version, about = "Bipolar possibilistic representations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    /// Largest number of declared variables accepted.
    #[arg(long, default_value_t = DEFAULT_MAX_VARS as u16, value_parser = clap::value_parser!(u16).range(0..=24), global = true)]
    max_vars: u16,
    /// Also check max(N, Δ) <= min(Π, ∇) on every nonempty proper event.
    #[arg(long, global = true)]
    check_eq6: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compile base files into lower and upper distributions.
    Compile {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Evaluate (Δ, Π, N, ∇) of a formula.
    Query { source: PathBuf, formula: String },
    /// Conditional (Δ, Π, N) of a hypothesis given evidence.
    Condition { source: PathBuf, evidence: String, hypothesis: String },
    /// Well-ordered partitions of a rule file.
    Wop { rules: PathBuf },
    /// Joint distributions of a network, or a check of its coherence.
    Net {
        network: PathBuf,
        #[arg(long, value_enum, default_value_t = NetMode::Revised)]
        mode: NetMode,
    },
    /// Rank causes of a model against an observation.
    Diagnose { model: PathBuf, observation: PathBuf },
    /// Validate input files of any kind.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let settings = Settings { format: cli.format, max_vars: cli.max_vars.into(), check_eq6: cli.check_eq6 };
    match &cli.command {
        Command::Compile { files } => commands::compile(&files.iter().map(PathBuf::as_path).collect::<Vec<_>>(), settings),
        Command::Query { source, formula } => commands::query(source, formula, settings),
        Command::Condition { source, evidence, hypothesis } => commands::condition(source, evidence, hypothesis, settings),
        Command::Wop { rules } => commands::wop(rules, settings),
        Command::Net { network, mode } => commands::net(network, *mode, settings),
        Command::Diagnose { model, observation } => commands::diagnose(model, observation, settings),
        Command::Check { files } => commands::check(&files.iter().map(PathBuf::as_path).collect::<Vec<_>>(), settings),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).unwrap_or_else(|failure| Outcome { failure: Some(failure), ..Outcome::default() });
    print!("{}", outcome.stdout);
    for warning in &outcome.warnings {
        eprintln!("warning: {warning}");
    }
    match outcome.failure {
        Some(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
        None => ExitCode::SUCCESS,
    }
}
