//! Erasure decoders: Gaussian MLD, GD Flip-BP₂, MBP₂/AMBP₂ and MBP₄/AMBP₄.
//!
//! Every decoder returns an erasure-matched estimate: bits outside the erased
//! coordinates are zero.

mod alpha;
mod binary_bp;
mod checks;
mod flip;
mod graph;
mod llr;
mod mld;
mod quaternary_bp;
mod spec;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::channel::{ErasurePattern, QuaternaryPrior};
use crate::gf2::BinaryVector;

pub use alpha::{alpha_func, AlphaList, ALPHA_FLOOR, ALPHA_STEP};
pub use binary_bp::{BinaryBp, Mbp2};
pub use flip::{GdFlip, GdFlipState};
pub use graph::{make_schedule, Schedule, ScheduleKind, TannerGraph};
pub use llr::{boxminus, boxplus, boxplus_many, prob_llr, soften, Llr, LLR_MAX, LLR_MIN};
pub use mld::{gaussian_mld, GaussianMld};
pub use quaternary_bp::{Mbp4, QuaternaryBp};
pub use spec::{AlphaName, AlphaSpec, DecoderSpec, PreparedDecoder};

/// Default iteration cap.
pub const DEFAULT_T_MAX: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeStatus {
    /// The estimate reproduces the syndrome.
    Converged,
    /// Iteration cap reached, or no solution exists.
    Fail,
    /// GD Flip-BP₂ resolved every unknown but the result misses the syndrome.
    GdFail,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeOutcome {
    /// Binary error estimate `(E^X | E^Z)` of length `2n`.
    pub estimate: BinaryVector,
    pub status: DecodeStatus,
    /// Iterations used; summed over all attempts for the adaptive decoders.
    pub iterations: usize,
    /// The `α` whose run converged, for the adaptive decoders.
    pub alpha: Option<f64>,
}

impl DecodeOutcome {
    pub fn converged(&self) -> bool {
        self.status == DecodeStatus::Converged
    }
}

/// What a decoder sees of one trial.
#[derive(Clone, Copy, Debug)]
pub struct DecodeInput<'a> {
    pub syndrome: &'a BinaryVector,
    pub pattern: &'a ErasurePattern,
    pub prior: &'a QuaternaryPrior,
}

/// Soft GD step of MBP₂: every `t_gd` iterations, priors of variables with
/// `|Γ_j| < lambda_gd` are reset to `sign(Γ_j) lambda_gd`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GdOpts {
    pub t_gd: usize,
    pub lambda_gd: f64,
}

impl Default for GdOpts {
    fn default() -> Self {
        Self {
            t_gd: 5,
            lambda_gd: 0.25,
        }
    }
}

pub trait ErasureDecoder: Send + Sync {
    /// Short identifier used in result tables.
    fn name(&self) -> &str;

    /// Decodes one trial. `rng` feeds randomized schedules only.
    fn decode(&self, input: &DecodeInput<'_>, rng: &mut dyn RngCore) -> DecodeOutcome;
}

/// Lifts a solution on `positions` back to a full-length vector.
pub(crate) fn lift(
    len: usize,
    positions: &[usize],
    values: impl Iterator<Item = bool>,
) -> BinaryVector {
    BinaryVector::from_indices(
        len,
        positions
            .iter()
            .zip(values)
            .filter(|(_, v)| *v)
            .map(|(&p, _)| p),
    )
}
