use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use subpir_core::Variant;

mod commands;
mod config;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("scheme error: {0}")]
    Scheme(#[from] subpir_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Scheme(_) => 3,
        }
    }
}

/// Simulate multi-server PIR over GRS-coded storage, with queries drawn from
/// the retrieval code, its subfield subcode or its trace code.
#[derive(Debug, Parser)]
#[command(name = "subpir", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reproduce one of the worked examples (1, 2 or 3).
    Demo {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        example: u8,
        #[command(flatten)]
        common: Common,
    },
    /// Check correctness, operation counts, privacy and rate for a config.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Compare the three variants on the configured codes.
    Bench {
        #[command(flatten)]
        common: Common,
    },
    /// Retrieve one file and print the transcript.
    Run {
        /// 1-based index of the file to retrieve.
        #[arg(long)]
        file: usize,
        /// Dump every query and response.
        #[arg(long)]
        trace_queries: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Storage dimension; overrides the config. For `demo`: example 1
    /// allows 1, example 2 up to 3, example 3 up to 5.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    mu: Option<usize>,
    #[arg(long)]
    variant: Option<Variant>,
}

impl Common {
    fn load(&self) -> Result<config::RunConfig, CliError> {
        let path = self
            .config
            .as_ref()
            .ok_or_else(|| CliError::Usage("--config PATH is required".into()))?;
        let mut cfg = config::RunConfig::load(path)?;
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(mu) = self.mu {
            cfg.mu = mu;
        }
        if let Some(k) = self.k {
            cfg.storage_k = k;
        }
        if let Some(v) = self.variant {
            cfg.variant = v;
        }
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Demo { example, common } => commands::demo(*example, common),
        Command::Verify { common } => common
            .load()
            .and_then(|cfg| commands::verify(&cfg, common.json)),
        Command::Bench { common } => common
            .load()
            .and_then(|cfg| commands::bench(&cfg, common.json)),
        Command::Run {
            file,
            trace_queries,
            common,
        } => common
            .load()
            .and_then(|cfg| commands::run(&cfg, *file, *trace_queries, common.json)),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("subpir: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
