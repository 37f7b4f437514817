//! `beck`: command-line front end for the Beck-type identity toolkit.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::PairArgs;
use output::Format;

#[derive(Debug, Parser)]
#[command(name = "beck", version, about = "Verify Beck-type identities for Euler pairs of order r")]
struct Cli {
    /// JSON file whose keys mirror the long flags; explicit flags win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect the built-in pair catalog or validate a pair.
    Pairs {
        #[command(subcommand)]
        action: PairsAction,
    },
    /// Check an identity by exhaustive enumeration for each n in a range.
    Verify {
        identity: Identity,
        #[command(flatten)]
        pair: PairArgs,
        /// Range of n, e.g. `1..12` (inclusive) or a single value.
        #[arg(long)]
        n: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Build the generating functions and compare coefficients.
    Series {
        #[command(flatten)]
        pair: PairArgs,
        /// Truncation degree (default 60).
        #[arg(long)]
        degree: Option<usize>,
        /// Also print every series.
        #[arg(long)]
        show: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Apply one bijection to one input.
    Map {
        name: MapName,
        #[command(flatten)]
        pair: PairArgs,
        /// Partition or annotated partition, in text or JSON form.
        #[arg(long)]
        input: Option<String>,
        /// Apply the inverse map and require the input back.
        #[arg(long)]
        roundtrip: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check the multipartite identities over a range of targets.
    Multi {
        #[command(flatten)]
        pair: PairArgs,
        /// Dimension of the multipartite numbers (default 2).
        #[arg(long)]
        s: Option<usize>,
        /// Largest entry sum of the swept targets (default 10).
        #[arg(long)]
        max_sum: Option<u64>,
        /// A single target such as `7,4` instead of a sweep.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Debug, Subcommand)]
enum PairsAction {
    /// List the pair families and the standard instances.
    List {
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check `rS1 ⊆ S1` up to a bound and report the first violation.
    Validate {
        #[command(flatten)]
        pair: PairArgs,
        /// Largest value examined (default 1000).
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Identity {
    /// (r-1)a = b = (r-1)c
    Beck1,
    /// b' = c'
    Beck2,
    /// |O_r(n)| = |D_r(n)|
    Counts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapName {
    GlaisherMerge,
    GlaisherSplit,
    MarkedToDecorated,
    O1rToDd,
    DdToO1r,
    D1rToDd,
    DdToD1r,
    TToOverlined,
    OverlinedToT,
}

/// Outcome of a command that ran to completion.
enum Status {
    Success,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(Status::Success) => ExitCode::SUCCESS,
        Ok(Status::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
