use std::io::Write;
use std::path::Path;

use super::config::ExperimentConfig;
use super::runner::{ResultRow, TimedRow};
use crate::decoders::alpha_func;
use crate::error::{Error, Result};
use crate::evaluation::{ebdd, rate_reference};

fn create(path: &Path) -> Result<std::fs::File> {
    std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes the rows as CSV with a header; wall-clock time is left out so
/// that reruns produce identical files.
pub fn write_csv<W: Write>(rows: &[TimedRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize::<&ResultRow>(&r.row)?;
    }
    if rows.is_empty() {
        // Header only, so empty runs still document the schema.
        w.write_record(CSV_COLUMNS)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub const CSV_COLUMNS: [&str; 17] = [
    "code_id",
    "n",
    "k",
    "decoder_id",
    "schedule_id",
    "p",
    "p_dep",
    "trials",
    "logical_errors",
    "non_convergences",
    "false_convergences",
    "avg_iterations",
    "alpha_mode",
    "seed",
    "config_hash",
    "stop_reason",
    "note",
];

pub fn write_csv_file(rows: &[TimedRow], path: &Path) -> Result<()> {
    write_csv(rows, create(path)?)
}

/// JSON array of rows including `wall_clock_s`.
pub fn write_json_file(rows: &[TimedRow], path: &Path) -> Result<()> {
    let f = create(path)?;
    serde_json::to_writer_pretty(f, rows)?;
    Ok(())
}

/// Reference curves over the configured grid: `alpha_func`, the rate
/// polynomial, and one `ebdd_n{n}_t{fraction}` column per length and
/// threshold fraction.
pub fn emit_reference_curves<W: Write>(cfg: &ExperimentConfig, out: W) -> Result<()> {
    let curves = cfg.curves.clone().unwrap_or_default();
    let grid = curves.grid.clone().unwrap_or_else(|| cfg.p_grid.clone());
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![
        "p".to_string(),
        "alpha_func".into(),
        "rate_reference".into(),
    ];
    let mut pairs = Vec::new();
    for &n in &curves.lengths {
        for &f in &curves.thresholds {
            header.push(format!("ebdd_n{n}_t{f}"));
            pairs.push((n, (f * n as f64).round() as u64));
        }
    }
    w.write_record(&header)?;
    for &p in &grid {
        let mut rec = vec![
            p.to_string(),
            alpha_func(p).to_string(),
            rate_reference(p).to_string(),
        ];
        for &(n, t) in &pairs {
            rec.push(format!("{:e}", ebdd(n, t.min(n), p)));
        }
        w.write_record(&rec)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
