// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! `riga`: pulse synthesis from a JSON run configuration.
//!
//! Exit status is 0 when the target is reached, 2 when the run ends without
//! reaching it, and 1 on any error.

mod commands;
mod config;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};

use crate::commands::Common;

#[derive(Parser)]
#[command(name = "riga", version, about = "Lyapunov-based pulse synthesis for encoded quantum gates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Run configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `outputs.dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `riga.seed.rng_seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides `riga.max_steps`.
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Iterative synthesis with closed-loop reference tracking.
    Run(CommonArgs),
    /// First-order GRAPE baseline on piecewise-constant pulses.
    Grape(CommonArgs),
    /// Checks a pulse file: half-step error, unitarity, populations and,
    /// for the oscillator models, a larger truncation.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Pulse file written by `run` or `grape`.
        #[arg(long)]
        pulses: PathBuf,
    },
}

/// Thread count from `RIGA_THREADS`; the numerical kernels run on one
/// thread, so the value is validated and recorded only.
fn threads() -> Result<usize> {
    match std::env::var("RIGA_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => bail!("RIGA_THREADS must be a positive integer, got {v:?}"),
        },
        Err(_) => Ok(1),
    }
}

fn common(a: CommonArgs) -> Result<Common> {
    Ok(Common {
        config: a.config,
        out: a.out,
        seed: a.seed,
        max_steps: a.max_steps,
        quiet: a.quiet,
        threads: threads()?,
    })
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Run(a) => commands::synthesize(&common(a)?, false),
        Command::Grape(a) => commands::synthesize(&common(a)?, true),
        Command::Verify { common: a, pulses } => commands::verify(&common(a)?, &pulses),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
