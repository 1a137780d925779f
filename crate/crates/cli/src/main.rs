//! Command-line front end for entropy bounds and minimum-entropy landscape
//! scans over noisy discrete sources.
//!
//! Five subcommands, all driven by a JSON model config:
//!
//! * `bounds`  — entropy, bound families, and Bayes error across noise scales
//! * `scan`    — exact-density entropy curve over projection angles + minima
//! * `discrete`— collision directions of the pure atom grid
//! * `taylor`  — axis curvature: numeric second difference vs closed form
//! * `parzen`  — seeded sample, Parzen-window entropy curve over angles
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 numerical
//! failure (the failing quantity is named on stderr).

use std::path::PathBuf;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod output;

#[derive(Parser)]
#[command(name = "entropy-landscape", version, about = "Entropy bounds and projection-entropy landscapes for noisy discrete sources")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy and its bounds for one mixture family across noise scales
    Bounds {
        /// Model config (JSON)
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated noise scales, e.g. "0.05,0.1,1,10"
        #[arg(long)]
        sigma: String,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entropy curve over projection angles with sandwich bounds and minima
    Scan {
        /// Model config (JSON)
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path; minima go to the same name with .minima.csv
        #[arg(long)]
        out: PathBuf,
        /// Angle-grid size (default 2048, even, at least 16)
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Candidate projection directions of the pure atom grid
    Discrete {
        /// Model config (JSON)
        #[arg(long)]
        config: PathBuf,
        /// Output JSON path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Axis curvature check: numeric second difference vs closed form
    Taylor {
        /// Model config (JSON)
        #[arg(long)]
        config: PathBuf,
        /// Which source's axis to expand around (0 or 1)
        #[arg(long, default_value_t = 0)]
        source: usize,
        /// Angle step of the second difference
        #[arg(long = "h-step", default_value_t = 0.01)]
        h_step: f64,
        /// Output JSON path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded Parzen-window entropy curve over projection angles
    Parzen {
        /// Model config (JSON)
        #[arg(long)]
        config: PathBuf,
        /// Sample seed; overrides the config's seed field
        #[arg(long)]
        seed: Option<u64>,
        /// Angle-grid size (default 128, even, at least 16)
        #[arg(long)]
        grid: Option<usize>,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();

    let result = match &cli.command {
        Command::Bounds { config, sigma, out } => config::load(config)
            .map_err(commands::Failure::Config)
            .and_then(|s| commands::bounds(&s, sigma, out.as_deref())),
        Command::Scan { config, out, grid } => config::load(config)
            .map_err(commands::Failure::Config)
            .and_then(|s| commands::scan(&s, *grid, out)),
        Command::Discrete { config, out } => config::load(config)
            .map_err(commands::Failure::Config)
            .and_then(|s| commands::discrete(&s, out.as_deref())),
        Command::Taylor {
            config,
            source,
            h_step,
            out,
        } => config::load(config)
            .map_err(commands::Failure::Config)
            .and_then(|s| commands::taylor(&s, *source, *h_step, out.as_deref())),
        Command::Parzen {
            config,
            seed,
            grid,
            out,
        } => config::load(config)
            .map_err(commands::Failure::Config)
            .and_then(|s| commands::parzen(&s, *seed, *grid, out.as_deref())),
    };

    if let Err(failure) = result {
        eprintln!("error: {}", failure.message());
        std::process::exit(failure.exit_code());
    }
}
