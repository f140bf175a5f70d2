//! `snm-cache`: run one configured experiment and write its artifacts.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 config or usage error,
//! 3 numerical failure, 4 acceptance-criteria failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use snm_cli::config::ExperimentConfig;
use snm_cli::error::{CliError, Result};
use snm_cli::experiments;

/// LRU cache analytics under shot-noise traffic.
#[derive(Debug, Parser)]
#[command(name = "snm-cache", version, about)]
struct Cli {
    /// Experiment config file (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Override the config's output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the config's RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Force simulation columns on (hit-curve experiment).
    #[arg(long)]
    simulate: bool,
    /// Override the config's trace replication count.
    #[arg(long)]
    replications: Option<u32>,
    /// Cap the number of worker threads (defaults to all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Config(format!("--jobs: {e}")))?;
    }
    let text = fs::read_to_string(&cli.config)
        .map_err(|e| CliError::Config(format!("{}: {e}", cli.config.display())))?;
    let mut config = ExperimentConfig::from_toml(&text)?;
    if let Some(out) = cli.out {
        config.experiment.output_dir = out;
    }
    if let Some(seed) = cli.seed {
        config.experiment.seed = seed;
    }
    if cli.simulate {
        config.experiment.simulate = true;
    }
    if let Some(replications) = cli.replications {
        config.experiment.replications = replications;
    }

    let outcome = experiments::run(&config)?;
    for report in &outcome.criteria {
        println!(
            "criterion {} ({}): {} — {}",
            report.index,
            report.name,
            if report.passed { "PASS" } else { "FAIL" },
            report.detail
        );
    }
    for file in &outcome.files {
        println!("wrote: {}", file.display());
    }
    let failed: Vec<String> = outcome
        .criteria
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("criterion {} ({})", r.index, r.name))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Acceptance { failed })
    }
}
