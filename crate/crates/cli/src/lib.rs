//! Command-line driver for the perpetual voting engine.
//!
//! Exit codes: 0 when the checked property holds, 1 when it is refuted,
//! 2 for usage and input errors.

pub mod commands;
pub mod format;
pub mod parallel;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "perpetual", version, about = "Exact perpetual voting rules, axiom checks and apportionment")]
pub struct Cli {
    /// Worker threads for campaigns.
    #[arg(long, global = true, env = "PERPETUAL_JOBS")]
    pub jobs: Option<usize>,

    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a rule and print the winner of every round.
    Run(RunArgs),
    /// Check an axiom for a rule.
    Check(CheckArgs),
    /// Regenerate an overview table from corpus entries and campaigns.
    Table(TableArgs),
    /// Apportion seats with D'Hondt or Frege.
    Apportion(ApportionArgs),
    /// Verify or export the construction corpus.
    Corpus(CorpusArgs),
}

#[derive(Debug, clap::Args)]
pub struct InputArgs {
    /// Sequence file.
    #[arg(long, conflicts_with = "simple")]
    pub input: Option<PathBuf>,

    /// Simple sequence as `sizes:k`, e.g. `2,1:3`.
    #[arg(long)]
    pub simple: Option<String>,
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    #[arg(long)]
    pub rule: String,

    #[command(flatten)]
    pub input: InputArgs,

    /// Also print the weights or loads before each round.
    #[arg(long)]
    pub trace: bool,

    /// Round cap of the Exponential Rule.
    #[arg(long, default_value_t = perpetual_core::rules::exponential::DEFAULT_MAX_ROUND)]
    pub max_round: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxiomArg {
    Dryspell,
    Iud,
    Simpleprop,
    Alq,
    Auq,
    Degree,
    Dictatorial,
}

#[derive(Debug, clap::Args)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub axiom: AxiomArg,

    #[arg(long)]
    pub rule: String,

    /// Check a single sequence instead of running a campaign.
    #[command(flatten)]
    pub input: InputArgs,

    /// Comma-separated limits: `n<=5`, `k<=12`, `instances=1000`.
    #[arg(long)]
    pub budget: Option<String>,

    #[arg(long)]
    pub seed: Option<u64>,

    /// Group size parameter ℓ for `degree`, e.g. `2` or `5/2`.
    #[arg(long)]
    pub ell: Option<String>,

    /// Where to write the witness on refutation.
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Rules,
    Classes,
}

#[derive(Debug, clap::Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub which: Which,

    /// Small campaigns.
    #[arg(long)]
    pub quick: bool,

    /// Print the evidence behind every cell.
    #[arg(long)]
    pub evidence: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Dhondt,
    Frege,
}

#[derive(Debug, clap::Args)]
pub struct ApportionArgs {
    #[arg(long, value_enum)]
    pub method: MethodArg,

    /// Comma-separated vote counts.
    #[arg(long)]
    pub votes: String,

    #[arg(long)]
    pub seats: usize,

    /// Compare against a perpetual rule on the matching simple sequence.
    #[arg(long)]
    pub verify_equivalence: Option<String>,

    /// Voters of the simple sequence; defaults to the vote total.
    #[arg(long)]
    pub voters: Option<usize>,
}

#[derive(Debug, clap::Args)]
pub struct CorpusArgs {
    #[command(subcommand)]
    pub action: CorpusAction,
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    /// Replay every entry.
    Verify,
    /// Write every entry as a sequence file plus an expected-outcome sidecar.
    Export {
        #[arg(long)]
        dir: PathBuf,
    },
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    if let Some(jobs) = cli.jobs {
        parallel::set_jobs(jobs);
    }
    let mut out = std::io::stdout().lock();
    match commands::dispatch(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
