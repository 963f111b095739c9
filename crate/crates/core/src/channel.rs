//! Erasure and mixed erasure/depolarizing channels, and decoder priors.
//!
//! Randomness comes from ChaCha8 streams: a trial with index `t` under cell
//! seed `s` draws from `ChaCha8Rng::seed_from_u64(s)` with its stream set to
//! `t`, so any trial can be regenerated independently of the others.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gf2::{BinaryVector, Pauli};

pub type TrialRng = ChaCha8Rng;

/// The generator for trial `stream` under `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Sorted set of erased qubit indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ErasurePattern {
    n: usize,
    erased: Vec<usize>,
}

impl ErasurePattern {
    /// Sorts and deduplicates; panics on indices outside `0..n`.
    pub fn new(n: usize, mut erased: Vec<usize>) -> Self {
        erased.sort_unstable();
        erased.dedup();
        if let Some(&last) = erased.last() {
            assert!(last < n, "erased index {last} outside 0..{n}");
        }
        Self { n, erased }
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            erased: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            erased: (0..n).collect(),
        }
    }

    /// Qubits on which `e` acts non-trivially.
    pub fn support_of(e: &BinaryVector) -> Self {
        let n = e.len() / 2;
        Self::new(n, (0..n).filter(|&j| e.get(j) || e.get(n + j)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn erased(&self) -> &[usize] {
        &self.erased
    }

    pub fn len(&self) -> usize {
        self.erased.len()
    }

    pub fn is_empty(&self) -> bool {
        self.erased.is_empty()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.n];
        for &j in &self.erased {
            m[j] = true;
        }
        m
    }

    pub fn complement(&self) -> Vec<usize> {
        let mask = self.mask();
        (0..self.n).filter(|&j| !mask[j]).collect()
    }

    /// Bit positions `r ∪ (r + n)` of the binary error vector, ascending.
    pub fn bit_positions(&self) -> Vec<usize> {
        self.erased
            .iter()
            .copied()
            .chain(self.erased.iter().map(|&j| j + self.n))
            .collect()
    }
}

/// Each qubit erased independently with probability `p`.
pub fn sample_erasure<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> ErasurePattern {
    let erased = (0..n).filter(|_| rng.gen::<f64>() < p).collect();
    ErasurePattern { n, erased }
}

/// Exactly `weight` erasures, uniformly over all subsets of that size.
pub fn sample_erasure_of_weight<R: Rng + ?Sized>(
    n: usize,
    weight: usize,
    rng: &mut R,
) -> ErasurePattern {
    let mut all: Vec<usize> = (0..n).collect();
    let (chosen, _) = all.partial_shuffle(rng, weight);
    ErasurePattern::new(n, chosen.to_vec())
}

fn uniform_pauli<R: Rng + ?Sized>(rng: &mut R) -> Pauli {
    Pauli::ALL[rng.gen_range(0..4)]
}

fn set_pauli(e: &mut BinaryVector, n: usize, j: usize, p: Pauli) {
    e.set(j, p.x_bit());
    e.set(n + j, p.z_bit());
}

/// Uniform Pauli on every erased qubit, identity elsewhere.
pub fn sample_error_on<R: Rng + ?Sized>(pattern: &ErasurePattern, rng: &mut R) -> BinaryVector {
    let n = pattern.n();
    let mut e = BinaryVector::zeros(2 * n);
    for &j in pattern.erased() {
        set_pauli(&mut e, n, j, uniform_pauli(rng));
    }
    e
}

/// Erasures at rate `p`, plus X, Y or Z (each `p_dep / 3`) on every
/// non-erased qubit.
pub fn sample_mixed<R: Rng + ?Sized>(
    n: usize,
    p: f64,
    p_dep: f64,
    rng: &mut R,
) -> (ErasurePattern, BinaryVector) {
    let pattern = sample_erasure(n, p, rng);
    let mut e = sample_error_on(&pattern, rng);
    if p_dep > 0.0 {
        let mask = pattern.mask();
        for j in (0..n).filter(|&j| !mask[j]) {
            if rng.gen::<f64>() < p_dep {
                let p = [Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..3)];
                set_pauli(&mut e, n, j, p);
            }
        }
    }
    (pattern, e)
}

/// Prior on non-erased qubits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum PriorMode {
    /// Non-erased qubits are known to be error free.
    PureErasure,
    /// Non-erased qubits carry `(1 - p0, p0/3, p0/3, p0/3)`.
    Mixed { p0: f64 },
}

/// Per-qubit `(p^I, p^X, p^Y, p^Z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternaryPrior {
    probs: Vec<[f64; 4]>,
}

impl QuaternaryPrior {
    pub fn new(probs: Vec<[f64; 4]>) -> Self {
        for q in &probs {
            debug_assert!(q.iter().all(|&x| x >= 0.0));
            debug_assert!((q.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        Self { probs }
    }

    pub fn n(&self) -> usize {
        self.probs.len()
    }

    /// `(p^I, p^X, p^Y, p^Z)` of qubit `j`.
    pub fn get(&self, j: usize) -> [f64; 4] {
        self.probs[j]
    }

    pub fn probs(&self) -> &[f64] {
        self.probs.as_flattened()
    }

    /// Binary reduction to `2n` bit priors `(P[bit = 0], P[bit = 1])`:
    /// X-half `p1 = p^X + p^Y`, Z-half `p1 = p^Z + p^Y`.
    pub fn binary(&self) -> Vec<[f64; 2]> {
        let x = self.probs.iter().map(|[_, px, py, _]| px + py);
        let z = self.probs.iter().map(|[_, _, py, pz]| pz + py);
        x.chain(z).map(|p1| [1.0 - p1, p1]).collect()
    }
}

/// Erased qubits get `(1/4, 1/4, 1/4, 1/4)`; the rest follow `mode`.
pub fn priors_for(pattern: &ErasurePattern, mode: PriorMode) -> QuaternaryPrior {
    let rest = match mode {
        PriorMode::PureErasure => [1.0, 0.0, 0.0, 0.0],
        PriorMode::Mixed { p0 } => [1.0 - p0, p0 / 3.0, p0 / 3.0, p0 / 3.0],
    };
    let mut probs = vec![rest; pattern.n()];
    for &j in pattern.erased() {
        probs[j] = [0.25; 4];
    }
    QuaternaryPrior { probs }
}

/// One sampled channel outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct ErasureTrial {
    pub pattern: ErasurePattern,
    pub error: BinaryVector,
    pub syndrome: BinaryVector,
}
