//! `fibtqc`: verification, compilation, benchmarking and robustness runs.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on usage or input
//! errors.

mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Default master seed; every random stream derives from it.
pub const DEFAULT_SEED: u64 = 20_190_101;

#[derive(Parser, Debug)]
#[command(name = "fibtqc", version, about = "Fibonacci-anyon braiding workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Protocol {
    Qpt,
    Rb,
    Pb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceArg {
    Ls,
    Ps,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the invariant suite.
    Verify {
        /// Print the check names without running them.
        #[arg(long)]
        list: bool,
        /// Fusion data JSON to check instead of the built-in Fibonacci tables.
        #[arg(long)]
        fusion_data: Option<PathBuf>,
        /// Override every check's tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Find a braid word for a single-qubit gate.
    Compile {
        /// Evaluate the 15-step Hadamard word instead of searching.
        #[arg(long, conflicts_with_all = ["gate", "matrix"])]
        hadamard: bool,
        /// Named gate: identity, hadamard, x, y, z, s, t.
        #[arg(long, conflicts_with = "matrix")]
        gate: Option<String>,
        /// JSON file with a 2x2 matrix (`rows`, `cols`, `entries` as [re, im]).
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_letters: usize,
        /// Cap on word evaluations.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Run a benchmarking protocol and write data files.
    Benchmark(commands::BenchmarkArgs),
    /// Thermal-pair robustness scenario.
    Robustness {
        /// Number of crossings, 1 or 2.
        #[arg(long, default_value_t = 1)]
        q: u32,
        /// Reconstruct the block from a dephased simulation.
        #[arg(long)]
        noisy: bool,
        /// Noise model JSON; its per-qubit T2 (four entries) drives the
        /// noisy simulation.
        #[arg(long)]
        noise: Option<PathBuf>,
        /// Random logical states for the global-phase sweep.
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the subsystem matrices for external comparison.
    DumpMatrices {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Output file (json) or directory (csv); stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure categories mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Check(String),
    Usage(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { list, fusion_data, tolerance, format } => commands::verify(list, fusion_data, tolerance, format),
        Command::Compile { hadamard, gate, matrix, max_letters, budget } => {
            commands::compile(hadamard, gate, matrix, max_letters, budget)
        }
        Command::Benchmark(args) => commands::benchmark(args),
        Command::Robustness { q, noisy, noise, samples, seed, format, out } => {
            commands::robustness(q, noisy, noise, samples, seed, format, out)
        }
        Command::DumpMatrices { format, out } => commands::dump_matrices(format, out),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
