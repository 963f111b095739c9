//! Seeded Monte Carlo experiments driven by a TOML config.
//!
//! Trial `t` of the cell for code `c` at grid point `i` draws from
//! `trial_rng(cell_seed(seed, c, i), t)`, so results depend only on the
//! config and seed, never on the worker count.

mod config;
mod output;
mod runner;

pub use config::{
    CodeEntry, CurvesConfig, DecoderEntry, ExperimentConfig, Fixture, Precision, PriorConfig,
    CONFIG_VERSION,
};
pub use output::{emit_reference_curves, write_csv, write_csv_file, write_json_file, CSV_COLUMNS};
pub use runner::{
    cell_seed, run_cell, run_experiment, run_trial, ResultRow, RunOptions, TimedRow, TrialSource,
    CHUNK,
};
