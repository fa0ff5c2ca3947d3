//! `cws`: verify, analyse and search graph-state quantum codes.
//!
//! Reports are JSON on stdout. `projector`, `statevec` and `search` print
//! their line-based payload first and the JSON report after it. Exit codes:
//! 0 success, 1 verification failure, 2 bad input. `paper-demo` always
//! prints its pass/fail table on stderr; other subcommands do so under
//! `--pretty`.

mod commands;
mod io;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "cws", version, about = "Exact tools for codeword-stabilized quantum codes")]
pub struct Cli {
    /// Cap on worker threads for the parallel scans.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Also print a human-readable summary on stderr.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CodeInput {
    /// Code file; defaults to the built-in ((9,12,3)) code.
    #[arg(long)]
    pub code: Option<PathBuf>,

    /// Graph file, overriding the code file's `graph` line.
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct GraphInput {
    /// Graph file; defaults to the 9-vertex loop graph.
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Fast,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Bb,
    Greedy,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Knill–Laflamme scan over all errors up to a weight.
    Verify {
        #[command(flatten)]
        input: CodeInput,
        #[arg(long, default_value_t = 2)]
        weight: usize,
    },
    /// Smallest failing error weight, scanning up to --max.
    Distance {
        #[command(flatten)]
        input: CodeInput,
        #[arg(long = "max", default_value_t = 4)]
        max_d: usize,
    },
    /// Phase-flip patterns of single- and two-qubit errors.
    Patterns {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Combinatorial transition-vs-pattern check, compared with the KL scan.
    Proofcheck {
        #[command(flatten)]
        input: CodeInput,
    },
    /// Expanded code projector in the Pauli basis.
    Projector {
        /// Expand from this code's codewords instead of the closed-form product.
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Weight enumerator A_0..A_n.
    Enumerator {
        #[command(flatten)]
        input: CodeInput,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Graph-state amplitudes as exact sign strings.
    Statevec {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Search for a large codeword set on a graph.
    Search {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 3)]
        distance: usize,
        #[arg(long = "min-size", default_value_t = 1)]
        min_size: usize,
        /// Time budget, e.g. `60s` or `500ms`.
        #[arg(long, default_value = "60s", value_parser = parse_budget)]
        budget: Duration,
        #[arg(long, value_enum, default_value_t = Strategy::Bb)]
        strategy: Strategy,
    },
    /// Full reproduction pipeline on the built-in ((9,12,3)) code.
    PaperDemo,
}

fn parse_budget(s: &str) -> Result<Duration, String> {
    if let Ok(secs) = s.parse::<u64>() {
        return Ok(Duration::from_secs(secs));
    }
    humantime::parse_duration(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(outcome) => {
            let json = serde_json::to_string_pretty(&outcome.report.to_json()).expect("json");
            let mut out = std::io::stdout().lock();
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = out
                .write_all(outcome.payload.as_deref().unwrap_or("").as_bytes())
                .and_then(|_| writeln!(out, "{json}"))
                .and_then(|_| out.flush());
            if cli.pretty || outcome.always_summary {
                for (k, v) in &outcome.summary {
                    eprintln!("{k:<32} {v}");
                }
            }
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
