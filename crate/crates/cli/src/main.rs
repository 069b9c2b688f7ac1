mod commands;
mod format;
mod inputs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twosided::sampling::GridMode;
use twosided::Execution;

#[derive(Parser, Debug)]
#[command(
    name = "twosided",
    version,
    about = "Two-sided time/frequency sampling experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Regenerate an experiment's data as CSV.
    Run(RunArgs),
    /// Recover expansion coefficients from node and measurement files.
    Recover(RecoverArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Heatmap,
    CondnumHermite,
    CondnumSharedInterval,
    CondnumDftPost,
    CondnumSinc,
    Specmon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GridModeArg {
    SpacingOverCount,
    InclusiveEndpoints,
}

impl From<GridModeArg> for GridMode {
    fn from(g: GridModeArg) -> Self {
        match g {
            GridModeArg::SpacingOverCount => GridMode::SpacingOverCount,
            GridModeArg::InclusiveEndpoints => GridMode::InclusiveEndpoints,
        }
    }
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub experiment: Experiment,
    /// Smallest budget D (condnum experiments).
    #[arg(long)]
    pub d_min: Option<usize>,
    /// Largest budget D, inclusive.
    #[arg(long)]
    pub d_max: Option<usize>,
    /// Step between budgets; defaults to 2 for condnum-hermite and 1 otherwise.
    #[arg(long)]
    pub d_step: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Equispaced grid convention; each experiment has its own default.
    #[arg(long, value_enum)]
    pub grid_mode: Option<GridModeArg>,
    /// Fixed time node of the heatmap.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t0: f64,
    #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
    pub grid_min: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    pub grid_max: f64,
    /// Heatmap points per axis.
    #[arg(long, default_value_t = 201)]
    pub resolution: usize,
    /// Ratio σ_min/σ_max below which a heatmap entry is flagged.
    #[arg(long, default_value_t = twosided::sampling::DEFAULT_RATIO_TOL)]
    pub ratio_tol: f64,
    #[arg(long, default_value_t = 16.0, allow_hyphen_values = true)]
    pub snr: f64,
    /// Read --snr in decibels instead of as a linear power ratio.
    #[arg(long)]
    pub snr_db: bool,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    /// Monitoring window length Z.
    #[arg(long, default_value_t = twosided::specmon::DEFAULT_WINDOW)]
    pub window: usize,
    /// Run on a single thread.
    #[arg(long)]
    pub sequential: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct RecoverArgs {
    /// `hermite:N` or `sinc:N`, with N the number of basis functions.
    #[arg(long)]
    pub family: String,
    /// CSV of `domain,value` rows, domain `T` or `F`.
    #[arg(long)]
    pub nodes: PathBuf,
    /// CSV of `domain,node,re,im` rows.
    #[arg(long)]
    pub measurements: PathBuf,
    /// Relative singular-value cutoff for the pseudoinverse.
    #[arg(long)]
    pub rtol: Option<f64>,
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    pub grid_min: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    pub grid_max: f64,
    #[arg(long, default_value_t = 201)]
    pub grid_points: usize,
    /// Coefficient CSV; the synthesized grid goes next to it with a `_synth` suffix.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let numeric = err
        .chain()
        .filter_map(|e| e.downcast_ref::<twosided::Error>())
        .any(|e| e.is_numeric_failure());
    if numeric {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => commands::run(&args),
        Command::Recover(args) => commands::recover(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
