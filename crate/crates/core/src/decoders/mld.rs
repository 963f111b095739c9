use std::sync::Arc;

use rand::RngCore;

use super::{lift, DecodeInput, DecodeOutcome, DecodeStatus, ErasureDecoder};
use crate::channel::ErasurePattern;
use crate::gf2::{gaussian_solve, BinaryMatrix, BinaryVector};

/// Solves `[H^Z_r | H^X_r] (E^X_r | E^Z_r)^T = s` by elimination and lifts
/// the particular solution to `2n` bits. `h_swapped` is `[H^Z | H^X]`.
///
/// Returns `Fail` with a zero estimate when the system is inconsistent,
/// which only happens if the error is not supported on the erasure.
pub fn gaussian_mld(
    h_swapped: &BinaryMatrix,
    syndrome: &BinaryVector,
    pattern: &ErasurePattern,
) -> DecodeOutcome {
    let len = h_swapped.cols();
    let positions = pattern.bit_positions();
    let a = h_swapped.select_columns(&positions);
    match gaussian_solve(&a, syndrome) {
        Some(x) => DecodeOutcome {
            estimate: lift(len, &positions, (0..x.len()).map(|i| x.get(i))),
            status: DecodeStatus::Converged,
            iterations: 0,
            alpha: None,
        },
        None => DecodeOutcome {
            estimate: BinaryVector::zeros(len),
            status: DecodeStatus::Fail,
            iterations: 0,
            alpha: None,
        },
    }
}

#[derive(Clone)]
pub struct GaussianMld {
    h_swapped: Arc<BinaryMatrix>,
}

impl GaussianMld {
    pub fn new(h_swapped: &BinaryMatrix) -> Self {
        Self {
            h_swapped: Arc::new(h_swapped.clone()),
        }
    }
}

impl ErasureDecoder for GaussianMld {
    fn name(&self) -> &str {
        "mld"
    }

    fn decode(&self, input: &DecodeInput<'_>, _rng: &mut dyn RngCore) -> DecodeOutcome {
        gaussian_mld(&self.h_swapped, input.syndrome, input.pattern)
    }
}
