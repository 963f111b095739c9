use std::io;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Parser;
use qldpc_erasure::experiment::{
    emit_reference_curves, run_experiment, write_csv, write_csv_file, write_json_file,
    ExperimentConfig, RunOptions,
};

/// Monte Carlo erasure-decoding experiments for stabilizer codes.
#[derive(Parser, Debug)]
#[command(name = "qldpc-sim", version, about)]
struct Args {
    /// Experiment config (TOML).
    #[arg(short, long)]
    config: PathBuf,

    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Worker threads (0 = one per core).
    #[arg(short, long, default_value_t = 1)]
    workers: usize,

    /// CSV output path; overrides the config, `-` for stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,

    /// Also write a JSON mirror with wall-clock times.
    #[arg(long)]
    json: Option<PathBuf>,

    /// Write reference curves to this CSV and exit without simulating.
    #[arg(long)]
    emit_curves: Option<PathBuf>,
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = Args::parse();
    let mut cfg = ExperimentConfig::load(&args.config)
        .with_context(|| format!("loading {}", args.config.display()))?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }

    if let Some(path) = &args.emit_curves {
        if path.as_os_str() == "-" {
            emit_reference_curves(&cfg, io::stdout().lock())?;
        } else {
            let f = std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            emit_reference_curves(&cfg, f)?;
            log::info!("reference curves written to {}", path.display());
        }
        return Ok(());
    }

    log::info!("config hash {} seed {}", cfg.hash(), cfg.seed);
    let rows = run_experiment(
        &cfg,
        RunOptions {
            workers: args.workers,
        },
    )?;

    match args.output.clone().or_else(|| cfg.output.clone()) {
        Some(path) if path.as_os_str() != "-" => {
            write_csv_file(&rows, &path)?;
            log::info!("{} rows written to {}", rows.len(), path.display());
        }
        _ => write_csv(&rows, io::stdout().lock())?,
    }
    if let Some(path) = &args.json {
        write_json_file(&rows, path)?;
    }
    Ok(())
}
