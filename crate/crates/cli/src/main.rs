//! `hkpr`: experiment driver for heat kernel pagerank and local clustering.
//!
//! Every subcommand writes CSV preceded by `# key=value` comment lines that
//! echo the configuration. Given the same configuration and master seed the
//! output is byte-identical, whatever the number of worker threads.

mod args;
mod commands;
mod report;
mod source;

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use args::{Cli, Command};
use commands::Failures;

fn run(cli: &Cli) -> Result<Failures> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring worker threads")?;
    }
    match &cli.command {
        Command::Hkpr(args) => commands::hkpr(args),
        Command::RankExperiment(args) => commands::rank_experiment(args),
        Command::Cluster(args) => commands::cluster(args),
        Command::Compare(args) => commands::compare(args),
        Command::Gen(args) => commands::gen(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Failures(failed)) if failed.is_empty() => ExitCode::SUCCESS,
        Ok(Failures(failed)) => {
            for (trial, error) in &failed {
                eprintln!("trial {trial} failed: {error}");
            }
            let indices: Vec<String> = failed.iter().map(|(i, _)| i.to_string()).collect();
            eprintln!("failed trials: {}", indices.join(","));
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
