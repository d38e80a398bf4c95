use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use risage_cli::commands::*;
use risage_cli::grid::{Counts, Grid};
use risage_cli::{CliError, RunContext};

/// Outage and SNR-law analysis for RIS-assisted UAV relaying with aged CSI.
#[derive(Parser)]
#[command(name = "risage", version, about)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Scenario TOML file.
    #[arg(long, global = true, default_value = "scenarios/default.toml")]
    scenario: PathBuf,
    /// Master seed for every random stream.
    #[arg(long, global = true, env = "RISAGE_SEED", default_value_t = 1)]
    seed: u64,
    /// Monte Carlo draws per hop.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    samples: usize,
    /// Output directory for CSV files and manifests.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Sampling threads; results do not depend on this.
    #[arg(long, global = true, env = "RISAGE_WORKERS", default_value_t = 1)]
    workers: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analytical vs simulated SNR density of one hop.
    Pdf {
        #[arg(long, value_enum)]
        hop: PdfHop,
        #[arg(long, value_enum, default_value = "exact")]
        mode: PdfMode,
        /// Grid of SNR values (linear), e.g. `0:2000:10` or `1,5,10`.
        #[arg(long)]
        grid: Option<Grid>,
        /// Override the BS antenna count.
        #[arg(long)]
        antennas: Option<u32>,
        /// Override the RIS element count.
        #[arg(long)]
        elements: Option<u32>,
        /// Moments used by the A2G series.
        #[arg(long, value_enum, default_value = "jensen")]
        chi_moments: ChiMode,
    },
    /// Outage at the planned threshold over outage levels and powers.
    Outage {
        #[arg(long, default_value = "0.1,0.01,0.001,0.0001")]
        levels: Grid,
        #[arg(long, default_value = "0:30:5,33")]
        powers: Grid,
        #[arg(long, value_enum, default_value = "gaussian")]
        threshold_mode: ThresholdMode,
    },
    /// Maximum target SE against UAV speed.
    SeSweep {
        #[arg(long, default_value = "0:100:0.5")]
        speeds: Grid,
        /// RIS sizes, e.g. `400,800`.
        #[arg(long)]
        elements: Option<Counts>,
        /// BS antenna counts, e.g. `4,8`.
        #[arg(long)]
        antennas: Option<Counts>,
        #[arg(long, default_value_t = 1e-4)]
        level: f64,
        #[arg(long, value_enum, default_value = "gaussian")]
        threshold_mode: ThresholdMode,
    },
    /// Run invariant suites; exits 1 if any check fails.
    Validate {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Replace the KS limits of the dists suite.
        #[arg(long)]
        ks_threshold: Option<f64>,
        /// Random points per special function.
        #[arg(long, default_value_t = 10_000)]
        points: usize,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let c = &cli.common;
    let command = std::env::args().collect::<Vec<_>>().join(" ");
    let ctx = RunContext::load(&c.scenario, c.seed, c.samples, c.workers, &c.out, command)?;
    match cli.cmd {
        Cmd::Pdf { hop, mode, grid, antennas, elements, chi_moments } => {
            run_pdf(&ctx, &PdfArgs { hop, mode, grid, antennas, elements, chi: chi_moments })?;
        }
        Cmd::Outage { levels, powers, threshold_mode } => {
            run_outage(&ctx, &OutageArgs { levels, powers, threshold_mode })?;
        }
        Cmd::SeSweep { speeds, elements, antennas, level, threshold_mode } => {
            let args = SeSweepArgs {
                speeds,
                elements: elements.map(|c| c.0).unwrap_or_default(),
                antennas: antennas.map(|c| c.0).unwrap_or_default(),
                level,
                threshold_mode,
            };
            run_se_sweep(&ctx, &args)?;
        }
        Cmd::Validate { suite, ks_threshold, points } => {
            run_validate(&ctx, &ValidateArgs { suite, ks_threshold, points })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
