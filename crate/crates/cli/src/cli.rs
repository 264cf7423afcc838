use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::{cmd_check, cmd_evolve, cmd_fluorescence, cmd_scan, GlobalOptions};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "bathent", version, about = "Entanglement creation by a common Markovian bath")]
pub struct Cli {
    /// Tolerance for positivity and Hermiticity checks.
    #[arg(long, global = true, default_value_t = bathent::TOL_PSD)]
    pub tol: f64,
    /// Accept Kossakowski matrices that are not positive.
    #[arg(long, global = true)]
    pub allow_non_cp: bool,
    /// Write the main result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate ρ(t), purity and PPT diagnostics on a time grid.
    Evolve {
        #[arg(long)]
        config: PathBuf,
        /// `bloch:x,y,z;x,y,z` or `matrix:` with 32 numbers.
        #[arg(long)]
        rho0: String,
        /// `t1,t2,...` or `linspace:start:end:n`.
        #[arg(long)]
        times: String,
    },
    /// Report positivity, exemptions and creation verdicts for a generator.
    Check {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
    /// Sweep the two-parameter example bath over [-1, 1]².
    Scan {
        #[arg(long, default_value_t = 201)]
        resolution: usize,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Also write a region map.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Analyze the collective bath A = B = C.
    Fluorescence {
        /// File with `[re]` and optional `[im]` sections of A.
        #[arg(long)]
        block: PathBuf,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    if !(cli.tol.is_finite() && cli.tol >= 0.0) {
        return Err(CliError::Invalid(format!("--tol must be a nonnegative number, got {}", cli.tol)));
    }
    let opts = GlobalOptions {
        tol: cli.tol,
        allow_non_cp: cli.allow_non_cp,
    };
    let mut sink: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| CliError::io(path.display().to_string(), e))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    };
    match &cli.command {
        Command::Evolve { config, rho0, times } => cmd_evolve(config, rho0, times, &opts, &mut sink)?,
        Command::Check { config, budget } => cmd_check(config, *budget, &opts, &mut sink)?,
        Command::Scan { resolution, budget, svg } => cmd_scan(*resolution, *budget, svg.as_deref(), &opts, &mut sink)?,
        Command::Fluorescence { block, budget } => cmd_fluorescence(block, *budget, &opts, &mut sink)?,
    }
    sink.flush().map_err(|e| CliError::io("output", e))
}
