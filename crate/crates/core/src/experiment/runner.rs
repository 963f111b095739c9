use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Fixture, Precision};
use crate::channel::{
    priors_for, sample_erasure_of_weight, sample_error_on, sample_mixed, trial_rng, ErasurePattern,
    ErasureTrial, PriorMode, TrialRng,
};
use crate::codes::StabilizerCode;
use crate::decoders::{DecodeInput, ErasureDecoder, Llr, PreparedDecoder};
use crate::error::{Error, Result};
use crate::evaluation::{adjudicate, CosetChecker, TrialStats};
use crate::gf2::pauli_string_to_binary;

/// Trials per scheduling unit. The early-stop rule is checked only between
/// chunks, so the set of trials run never depends on the worker count.
pub const CHUNK: u64 = 256;

/// One CSV row per (code, decoder, p) cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub code_id: String,
    pub n: usize,
    pub k: usize,
    pub decoder_id: String,
    pub schedule_id: String,
    pub p: f64,
    pub p_dep: f64,
    pub trials: u64,
    pub logical_errors: u64,
    pub non_convergences: u64,
    pub false_convergences: u64,
    pub avg_iterations: f64,
    /// Most frequent winning `α`, or the decoder's `α` strategy label when
    /// nothing converged.
    pub alpha_mode: String,
    pub seed: u64,
    pub config_hash: String,
    /// `trials`, `target_errors`, or `error`.
    pub stop_reason: String,
    pub note: String,
}

/// A row with its wall-clock time, for the JSON mirror.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TimedRow {
    #[serde(flatten)]
    pub row: ResultRow,
    pub wall_clock_s: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Worker threads; 0 uses rayon's default.
    pub workers: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { workers: 1 }
    }
}

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the trials for code `code_idx` at grid point `p_idx`. Decoders
/// in the same cell see the same trials.
pub fn cell_seed(seed: u64, code_idx: usize, p_idx: usize) -> u64 {
    mix(mix(mix(seed) ^ code_idx as u64) ^ p_idx as u64)
}

/// How trials are drawn for one cell.
#[derive(Clone, Debug)]
pub enum TrialSource {
    /// Erasure rate `p` plus depolarizing rate `p_dep` off the erasure.
    Channel { p: f64, p_dep: f64 },
    /// Uniformly random erasure of exactly this many qubits.
    Weight(usize),
    /// Fixed erasure, error drawn uniformly on it.
    FixedPattern(ErasurePattern),
    /// Fixed erasure and error.
    Fixed(ErasurePattern, crate::gf2::BinaryVector),
}

impl TrialSource {
    pub fn from_fixture(fixture: &Fixture, n: usize) -> Result<Self> {
        let check = |idx: &[usize]| {
            if let Some(&bad) = idx.iter().find(|&&j| j >= n) {
                Err(Error::Config(format!("fixture qubit {bad} outside 0..{n}")))
            } else {
                Ok(())
            }
        };
        match (&fixture.erased, &fixture.error) {
            (erased, Some(err)) => {
                let e = pauli_string_to_binary(err)?;
                if e.len() != 2 * n {
                    return Err(Error::Config(format!(
                        "fixture error has {} qubits, code has {n}",
                        e.len() / 2
                    )));
                }
                let pattern = match erased {
                    Some(idx) => {
                        check(idx)?;
                        ErasurePattern::new(n, idx.clone())
                    }
                    None => ErasurePattern::support_of(&e),
                };
                Ok(TrialSource::Fixed(pattern, e))
            }
            (Some(idx), None) => {
                check(idx)?;
                Ok(TrialSource::FixedPattern(ErasurePattern::new(
                    n,
                    idx.clone(),
                )))
            }
            (None, None) => Err(Error::Config(
                "fixture needs erased qubits or an error".into(),
            )),
        }
    }

    pub fn sample(&self, code: &StabilizerCode, rng: &mut TrialRng) -> ErasureTrial {
        let (pattern, error) = match self {
            TrialSource::Channel { p, p_dep } => sample_mixed(code.n(), *p, *p_dep, rng),
            TrialSource::Weight(w) => {
                let pat = sample_erasure_of_weight(code.n(), *w, rng);
                let e = sample_error_on(&pat, rng);
                (pat, e)
            }
            TrialSource::FixedPattern(pat) => (pat.clone(), sample_error_on(pat, rng)),
            TrialSource::Fixed(pat, e) => (pat.clone(), e.clone()),
        };
        let syndrome = code.syndrome(&error);
        ErasureTrial {
            pattern,
            error,
            syndrome,
        }
    }
}

/// Runs trial `index` of a cell: sample, decode, adjudicate.
#[allow(clippy::too_many_arguments)]
pub fn run_trial(
    code: &StabilizerCode,
    checker: &CosetChecker,
    decoder: &dyn ErasureDecoder,
    source: &TrialSource,
    prior: PriorMode,
    seed: u64,
    index: u64,
    stats: &mut TrialStats,
) {
    let mut rng = trial_rng(seed, index);
    let trial = source.sample(code, &mut rng);
    let priors = priors_for(&trial.pattern, prior);
    let input = DecodeInput {
        syndrome: &trial.syndrome,
        pattern: &trial.pattern,
        prior: &priors,
    };
    let outcome = decoder.decode(&input, &mut rng);
    stats.record(adjudicate(checker, &trial, &outcome), &outcome);
}

/// Runs trials `0..max` in chunks, stopping after the first chunk that
/// brings the logical-error count to `target`.
#[allow(clippy::too_many_arguments)]
pub fn run_cell(
    code: &StabilizerCode,
    checker: &CosetChecker,
    decoder: &dyn ErasureDecoder,
    source: &TrialSource,
    prior: PriorMode,
    seed: u64,
    max: u64,
    target: Option<u64>,
) -> (TrialStats, &'static str) {
    let mut stats = TrialStats::default();
    let mut start = 0;
    while start < max {
        let end = (start + CHUNK).min(max);
        let chunk = (start..end)
            .into_par_iter()
            .fold(TrialStats::default, |mut s, t| {
                run_trial(code, checker, decoder, source, prior, seed, t, &mut s);
                s
            })
            .reduce(TrialStats::default, |mut a, b| {
                a.merge(&b);
                a
            });
        stats.merge(&chunk);
        start = end;
        if target.is_some_and(|t| stats.logical_errors >= t) {
            return (stats, "target_errors");
        }
    }
    (stats, "trials")
}

/// Every (code, decoder, p) cell of `cfg`, in config order.
pub fn run_experiment(cfg: &ExperimentConfig, opts: RunOptions) -> Result<Vec<TimedRow>> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| match cfg.precision {
        Precision::F64 => run_all::<f64>(cfg),
        Precision::F32 => run_all::<f32>(cfg),
    })
}

fn run_all<T: Llr>(cfg: &ExperimentConfig) -> Result<Vec<TimedRow>> {
    let hash = cfg.hash();
    let mut rows = Vec::new();
    if cfg.trials_per_point == 0 {
        return Ok(rows);
    }
    for (ci, entry) in cfg.codes.iter().enumerate() {
        let code_id = entry.id();
        let code = match entry.spec.build() {
            Ok(c) => c,
            Err(e) => {
                log::error!("code {code_id}: {e}");
                for d in &cfg.decoders {
                    for &p in &cfg.p_grid {
                        let mut row =
                            blank_row(cfg, &hash, &code_id, 0, 0, &d.id(), d.spec.schedule_id(), p);
                        row.stop_reason = "error".into();
                        row.note = e.to_string();
                        rows.push(TimedRow {
                            row,
                            wall_clock_s: 0.0,
                        });
                    }
                }
                continue;
            }
        };
        log::info!("code {code_id}: [[{}, {}]]", code.n(), code.k());
        let checker = CosetChecker::new(&code);
        let fixture = cfg
            .fixture
            .as_ref()
            .map(|f| TrialSource::from_fixture(f, code.n()))
            .transpose()?;
        for d in &cfg.decoders {
            let prepared: Result<PreparedDecoder<T>> = d.spec.prepare(&code);
            for (pi, &p) in cfg.p_grid.iter().enumerate() {
                let mut row = blank_row(
                    cfg,
                    &hash,
                    &code_id,
                    code.n(),
                    code.k(),
                    &d.id(),
                    d.spec.schedule_id(),
                    p,
                );
                let decoder = match prepared
                    .as_ref()
                    .map_err(|e| e.to_string())
                    .and_then(|pd| pd.at(p).map_err(|e| e.to_string()))
                {
                    Ok(dec) => dec,
                    Err(msg) => {
                        row.stop_reason = "error".into();
                        row.note = msg;
                        rows.push(TimedRow {
                            row,
                            wall_clock_s: 0.0,
                        });
                        continue;
                    }
                };
                let source = fixture.clone().unwrap_or(TrialSource::Channel {
                    p,
                    p_dep: cfg.p_dep,
                });
                let prior = cfg.prior.resolve(cfg.p_dep);
                let started = Instant::now();
                let (stats, reason) = run_cell(
                    &code,
                    &checker,
                    decoder.as_ref(),
                    &source,
                    prior,
                    cell_seed(cfg.seed, ci, pi),
                    cfg.trials_per_point,
                    cfg.target_logical_errors,
                );
                let wall = started.elapsed().as_secs_f64();
                fill_row(&mut row, &stats, reason, &d.spec.alpha_mode());
                row.note = cfg.prior.id(cfg.p_dep);
                log::info!(
                    "{code_id} {} p={p}: {}/{} errors in {wall:.2}s",
                    row.decoder_id,
                    stats.logical_errors,
                    stats.trials
                );
                rows.push(TimedRow {
                    row,
                    wall_clock_s: wall,
                });
            }
        }
    }
    Ok(rows)
}

#[allow(clippy::too_many_arguments)]
fn blank_row(
    cfg: &ExperimentConfig,
    hash: &str,
    code_id: &str,
    n: usize,
    k: usize,
    decoder_id: &str,
    schedule_id: &str,
    p: f64,
) -> ResultRow {
    ResultRow {
        code_id: code_id.into(),
        n,
        k,
        decoder_id: decoder_id.into(),
        schedule_id: schedule_id.into(),
        p,
        p_dep: cfg.p_dep,
        trials: 0,
        logical_errors: 0,
        non_convergences: 0,
        false_convergences: 0,
        avg_iterations: 0.0,
        alpha_mode: String::new(),
        seed: cfg.seed,
        config_hash: hash.into(),
        stop_reason: String::new(),
        note: String::new(),
    }
}

fn fill_row(row: &mut ResultRow, stats: &TrialStats, reason: &str, alpha_label: &str) {
    row.trials = stats.trials;
    row.logical_errors = stats.logical_errors;
    row.non_convergences = stats.non_convergences;
    row.false_convergences = stats.false_convergences;
    row.avg_iterations = stats.avg_iterations();
    row.alpha_mode = stats
        .alpha_mode()
        .map_or_else(|| alpha_label.to_string(), |a| format!("{a}"));
    row.stop_reason = reason.into();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_seeds_differ() {
        let a = cell_seed(1, 0, 0);
        assert_ne!(a, cell_seed(1, 0, 1));
        assert_ne!(a, cell_seed(1, 1, 0));
        assert_ne!(a, cell_seed(2, 0, 0));
        assert_eq!(a, cell_seed(1, 0, 0));
    }

    #[test]
    fn fixture_sources() {
        let f = Fixture {
            erased: None,
            error: Some("IXIY".into()),
        };
        match TrialSource::from_fixture(&f, 4).unwrap() {
            TrialSource::Fixed(pat, _) => assert_eq!(pat.erased(), &[1, 3]),
            other => panic!("{other:?}"),
        }
        let out_of_range = Fixture {
            erased: Some(vec![4]),
            error: None,
        };
        assert!(TrialSource::from_fixture(&out_of_range, 4).is_err());
        assert!(TrialSource::from_fixture(&Fixture::default(), 4).is_err());
    }
}
