use std::path::PathBuf;
use std::process::ExitCode;

use axiflow::cli;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "axiflow",
    version,
    about = "Axially symmetric mean curvature flow laboratory",
    after_help = "Exit codes: 0 success, 1 check/fit failure, 2 config error, 3 IO error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a flow scenario described by a JSON config file.
    Run {
        /// JSON config with scenario, flow parameters, and out_dir.
        config: PathBuf,
    },
    /// Audit a trajectory directory against the monitor checks.
    Monitor {
        /// Directory written by `run`.
        dir: PathBuf,
    },
    /// Rescale a trajectory around its curvature-maximising event and fit
    /// the catenoid limit.
    Rescale {
        /// Directory written by `run`.
        dir: PathBuf,
        /// Only snapshots at or before this time are scanned for the event
        /// (defaults to the last snapshot time).
        #[arg(long)]
        deadline: Option<f64>,
        /// Slack constant in the contradiction scale.
        #[arg(long, default_value_t = 1e-3)]
        eps1: f64,
        /// Additive offset in the contradiction scale.
        #[arg(long, default_value_t = 1e-3)]
        eps2: f64,
    },
    /// Least-squares catenoid fit of a profile snapshot.
    FitCatenoid {
        /// Plain or rescaled snapshot JSON.
        snapshot: PathBuf,
    },
    /// Dump the geometric state derived from a profile snapshot.
    Derive {
        snapshot: PathBuf,
        /// Write the dump here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config } => cli::cmd_run(&config),
        Command::Monitor { dir } => cli::cmd_monitor(&dir),
        Command::Rescale {
            dir,
            deadline,
            eps1,
            eps2,
        } => cli::cmd_rescale(&dir, deadline, eps1, eps2),
        Command::FitCatenoid { snapshot } => cli::cmd_fit_catenoid(&snapshot),
        Command::Derive { snapshot, out } => cli::cmd_derive(&snapshot, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
