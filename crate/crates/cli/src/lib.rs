//! Command-line front end for the `ssot-core` engine simulations.
//!
//! Every command produces a single buffered document (CSV or JSON) that is
//! written to `--out` or stdout once all grid points are done.

pub mod commands;
pub mod config;
pub mod format;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use config::{CliError, Range};

#[derive(Debug, Parser)]
#[command(
    name = "ssot",
    version,
    about = "Single-shot thermodynamics of small heat engines"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format (each command has its own default).
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a state file and report its single-shot work values.
    CheckState(CheckStateArgs),
    /// Equilibrium qubit engine, optionally swept over any parameter.
    QubitEngine(QubitEngineArgs),
    /// Cycle between two thermal-like states on one Hamiltonian.
    NoneqCycle(NoneqCycleArgs),
    /// Qubit engine with bounded-fluctuation work from the thermalizations.
    FluctSweep(FluctSweepArgs),
    /// Efficiency of the correlated many-qubit engine against N.
    ManybodyScan(ManybodyScanArgs),
    /// Reversed cycle run as a refrigerator.
    Refrigerator(RefrigeratorArgs),
}

#[derive(Debug, Args)]
pub struct CheckStateArgs {
    /// State file: {"energies": [..], "degeneracies": [..], "populations": [..]}.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub temp: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct QubitEngineArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub w1: Range,
    #[arg(long, allow_negative_numbers = true)]
    pub w2: Range,
    #[arg(long, default_value = "2", allow_negative_numbers = true)]
    pub thot: Range,
    #[arg(long, default_value = "1", allow_negative_numbers = true)]
    pub tcold: Range,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Distinct energies, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub energies: Option<Vec<f64>>,
    /// Degeneracies of the energies (all 1 when omitted).
    #[arg(long, value_delimiter = ',')]
    pub degeneracies: Option<Vec<usize>>,
    /// Levels occupied at corners A and D.
    #[arg(long, value_delimiter = ',')]
    pub u: Option<Vec<usize>>,
    /// Levels occupied at corners B and C (all levels when omitted).
    #[arg(long, value_delimiter = ',')]
    pub v: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct NoneqCycleArgs {
    #[command(flatten)]
    pub spectrum: SpectrumArgs,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub thot: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub tcold: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FluctSweepArgs {
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub w1: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub w2: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub thot: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub tcold: f64,
    /// Allowed work fluctuation, as a value or start:stop:count.
    #[arg(
        long = "delta-w",
        default_value = "0:2:21",
        allow_negative_numbers = true
    )]
    pub delta_w: Range,
    /// Lowest battery level.
    #[arg(long = "w-min", default_value_t = -2.0, allow_negative_numbers = true)]
    pub w_min: f64,
    /// Highest battery level.
    #[arg(long = "w-max", default_value_t = 2.0, allow_negative_numbers = true)]
    pub w_max: f64,
    /// Number of evenly spaced battery levels.
    #[arg(long, default_value_t = 41)]
    pub levels: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ManybodyScanArgs {
    /// Register sizes, comma separated.
    #[arg(
        long = "n",
        value_delimiter = ',',
        default_value = "4,16,64,256,1024,4096"
    )]
    pub sizes: Vec<u64>,
    /// Excitation fraction allowed at corners A and D.
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub q: f64,
    /// Excitation fraction allowed at corners B and C.
    #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
    pub r: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub thot: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub tcold: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RefrigeratorArgs {
    /// Qubit gap at corners A and D.
    #[arg(long, allow_negative_numbers = true)]
    pub w1: Option<f64>,
    /// Qubit gap at corners B and C.
    #[arg(long, allow_negative_numbers = true)]
    pub w2: Option<f64>,
    #[command(flatten)]
    pub spectrum: SpectrumArgs,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub thot: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub tcold: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::CheckState(a) => &a.output,
            Command::QubitEngine(a) => &a.output,
            Command::NoneqCycle(a) => &a.output,
            Command::FluctSweep(a) => &a.output,
            Command::ManybodyScan(a) => &a.output,
            Command::Refrigerator(a) => &a.output,
        }
    }
}

/// Runs the command and returns the rendered document.
pub fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::CheckState(a) => commands::check_state(a),
        Command::QubitEngine(a) => commands::qubit_engine(a),
        Command::NoneqCycle(a) => commands::noneq_cycle(a),
        Command::FluctSweep(a) => commands::fluct_sweep(a),
        Command::ManybodyScan(a) => commands::manybody_scan(a),
        Command::Refrigerator(a) => commands::refrigerator(a),
    }
}

fn execute_and_write(cli: &Cli) -> Result<(), CliError> {
    let threads = config::thread_cap(std::env::var("SSOT_THREADS").ok())?;
    let text = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::config("SSOT_THREADS", e.to_string()))?
            .install(|| execute(&cli.command))?,
        None => execute(&cli.command)?,
    };
    match &cli.command.output().out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::config("out", format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::config("out", format!("cannot write to stdout: {e}")))
        }
    }
}

/// Parses `args` (including the program name) and runs; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute_and_write(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
