//! `cyclestab`: exact cycle spectra, stability decompositions and Ramsey
//! certificates from the command line. Every run prints one report; the
//! exit code is 0 on success, 1 on a failed verification or a
//! counterexample, 2 on an input error and 3 on a timeout.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use cyclestab_core::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Spectrum,
    Bounds,
    Paths,
    DecomposeThdc,
    DecomposeCycth,
    DecomposeTh3par,
    Le4,
    RamseyCert,
    RamseySweep,
    Arrth,
    Verify,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "cyclestab",
    version,
    about = "Exact cycle spectra, stability certificates and Ramsey sweeps"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Graph file, graph6 or edge list.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Two-colouring file: `p`, then `u v c` per pair with c in {R, B, Y}.
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    /// Report or certificate to re-check (verify only).
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    #[arg(long, value_parser = rational)]
    pub alpha: Option<Rational>,
    #[arg(long, value_parser = rational)]
    pub beta: Option<Rational>,
    #[arg(long, value_parser = rational)]
    pub gamma: Option<Rational>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub samples: Option<u64>,
    /// Worker threads for sweeps; defaults to CYCLESTAB_THREADS, then the
    /// available parallelism.
    #[arg(long, env = "CYCLESTAB_THREADS")]
    pub shards: Option<usize>,
    /// Wall-clock limit in seconds for each exact search.
    #[arg(long)]
    pub timeout: Option<f64>,
    /// Reject parameters outside the constant ranges of the theorems.
    #[arg(long)]
    pub enforce_paper_range: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Path endpoints and length (paths only).
    #[arg(long)]
    pub from: Option<usize>,
    #[arg(long)]
    pub to: Option<usize>,
    #[arg(long)]
    pub length: Option<usize>,
    /// Permit exhaustive sweeps above 30 edges.
    #[arg(long)]
    pub allow_large: bool,
    /// Progress file for sweeps.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Add wall-clock seconds to the report; off by default so reports stay
    /// byte-identical across runs.
    #[arg(long)]
    pub timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.shards.filter(|&t| t > 0) {
        // the per-length spectrum fan-out shares the sweep's worker count
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let (report, code) = commands::run(&cli);
    let text = match cli.format {
        Format::Json => report::to_json(&report),
        Format::Csv => report::to_csv(&report),
    };
    print!("{text}");
    ExitCode::from(code)
}
