//! Adjudication of decoder outputs, trial statistics and analytic reference
//! curves.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::channel::ErasureTrial;
use crate::codes::StabilizerCode;
use crate::decoders::{DecodeOutcome, DecodeStatus};
use crate::gf2::{swap_halves, BinaryMatrix, BinaryVector};

/// True iff `actual + estimate` is a stabilizer: it has zero syndrome and
/// commutes with every logical generator.
pub fn logical_coset_check(
    code: &StabilizerCode,
    actual: &BinaryVector,
    estimate: &BinaryVector,
) -> bool {
    CosetChecker::new(code).same_coset(actual, estimate)
}

/// Caches the swapped check and logical matrices of one code, so that each
/// check is two matrix-vector products.
#[derive(Clone, Debug)]
pub struct CosetChecker {
    checks: BinaryMatrix,
    logicals: BinaryMatrix,
}

impl CosetChecker {
    pub fn new(code: &StabilizerCode) -> Self {
        Self {
            checks: code.swapped_check_matrix().clone(),
            logicals: swap_halves(code.logicals()),
        }
    }

    pub fn same_coset(&self, actual: &BinaryVector, estimate: &BinaryVector) -> bool {
        let residual = actual.xor(estimate);
        self.checks.mul_vec(&residual).is_zero() && self.logicals.mul_vec(&residual).is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Adjudication {
    Success,
    FalseConvergence,
    NonConvergence,
}

/// Non-convergence unless the decoder converged; otherwise success iff the
/// estimate is in the error's logical coset.
pub fn adjudicate(
    checker: &CosetChecker,
    trial: &ErasureTrial,
    outcome: &DecodeOutcome,
) -> Adjudication {
    if outcome.status != DecodeStatus::Converged {
        Adjudication::NonConvergence
    } else if checker.same_coset(&trial.error, &outcome.estimate) {
        Adjudication::Success
    } else {
        Adjudication::FalseConvergence
    }
}

/// Counts over a set of trials. `logical_errors = non_convergences +
/// false_convergences` always holds.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub trials: u64,
    pub logical_errors: u64,
    pub non_convergences: u64,
    pub false_convergences: u64,
    pub iteration_sum: u64,
    /// Winning `α` (in millionths) to count.
    pub alpha_histogram: BTreeMap<i64, u64>,
}

fn alpha_key(a: f64) -> i64 {
    (a * 1e6).round() as i64
}

impl TrialStats {
    pub fn record(&mut self, adjudication: Adjudication, outcome: &DecodeOutcome) {
        self.trials += 1;
        self.iteration_sum += outcome.iterations as u64;
        match adjudication {
            Adjudication::Success => {}
            Adjudication::FalseConvergence => {
                self.logical_errors += 1;
                self.false_convergences += 1;
            }
            Adjudication::NonConvergence => {
                self.logical_errors += 1;
                self.non_convergences += 1;
            }
        }
        if let Some(a) = outcome.alpha {
            *self.alpha_histogram.entry(alpha_key(a)).or_default() += 1;
        }
    }

    pub fn merge(&mut self, other: &TrialStats) {
        self.trials += other.trials;
        self.logical_errors += other.logical_errors;
        self.non_convergences += other.non_convergences;
        self.false_convergences += other.false_convergences;
        self.iteration_sum += other.iteration_sum;
        for (&k, &v) in &other.alpha_histogram {
            *self.alpha_histogram.entry(k).or_default() += v;
        }
    }

    pub fn logical_error_rate(&self) -> f64 {
        ratio(self.logical_errors, self.trials)
    }

    pub fn false_convergence_rate(&self) -> f64 {
        ratio(self.false_convergences, self.trials)
    }

    pub fn non_convergence_rate(&self) -> f64 {
        ratio(self.non_convergences, self.trials)
    }

    pub fn avg_iterations(&self) -> f64 {
        ratio(self.iteration_sum, self.trials)
    }

    /// Most frequent winning `α`, smallest on ties.
    pub fn alpha_mode(&self) -> Option<f64> {
        self.alpha_histogram
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(&k, _)| k as f64 / 1e6)
    }
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Functional form of [`TrialStats::record`].
pub fn accumulate(
    mut stats: TrialStats,
    adjudication: Adjudication,
    outcome: &DecodeOutcome,
) -> TrialStats {
    stats.record(adjudication, outcome);
    stats
}

/// `ln C(n, k)` via log-factorial sums.
fn ln_choose(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    let mut acc = Neumaier::default();
    for i in 0..k {
        acc.add(((n - i) as f64).ln() - ((i + 1) as f64).ln());
    }
    acc.sum()
}

/// Compensated summation.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn sum(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `P[X = k]` for `X ~ Bin(n, p)`.
pub fn binomial_pmf(n: u64, k: u64, p: f64) -> f64 {
    if k > n {
        return 0.0;
    }
    if p <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if p >= 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    (ln_choose(n, k) + k as f64 * p.ln() + (n - k) as f64 * (-p).ln_1p()).exp()
}

/// `P[X >= k]` for `X ~ Bin(n, p)`, summed in log space with compensation.
/// When `k` is at or below the mean the complement is summed instead, so
/// values near 1 keep full relative accuracy in `1 - P`.
pub fn binomial_tail_from(n: u64, k: u64, p: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if k > n || p <= 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return 1.0;
    }
    if (k as f64) > n as f64 * p {
        binomial_range(n, k, n, p).min(1.0)
    } else {
        (1.0 - binomial_range(n, 0, k - 1, p)).max(0.0)
    }
}

/// `P[lo <= X <= hi]` for `0 < p < 1`.
fn binomial_range(n: u64, lo: u64, hi: u64, p: f64) -> f64 {
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    let mut logs = Vec::with_capacity((hi - lo + 1) as usize);
    let mut l = ln_choose(n, lo) + lo as f64 * lp + (n - lo) as f64 * lq;
    let step = lp - lq;
    for j in lo..=hi {
        logs.push(l);
        if j < n {
            l += ((n - j) as f64).ln() - ((j + 1) as f64).ln() + step;
        }
    }
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut acc = Neumaier::default();
    for &x in &logs {
        acc.add((x - max).exp());
    }
    (max + acc.sum().ln()).exp()
}

/// `⌈3t/4⌉`, the radius in the eBDD definition.
pub fn ebdd_radius(t: u64) -> u64 {
    (3 * t).div_ceil(4)
}

/// `Σ_{j > ⌈3t/4⌉} C(n,j) (3p/4)^j (1 - 3p/4)^{n-j}`.
pub fn ebdd(n: u64, t: u64, p: f64) -> f64 {
    assert!(t <= n, "t = {t} exceeds n = {n}");
    binomial_tail_from(n, ebdd_radius(t) + 1, 0.75 * p)
}

/// Hoeffding bound `exp(-2n (t'/n - p')^2)` on [`ebdd`], with `t' = ⌈3t/4⌉`
/// and `p' = 3p/4`; `1` when `t' < n p'`.
pub fn ebdd_exponent_bound(n: u64, t: u64, p: f64) -> f64 {
    let tp = ebdd_radius(t) as f64 / n as f64;
    let pp = 0.75 * p;
    if tp < pp {
        return 1.0;
    }
    (-2.0 * n as f64 * (tp - pp).powi(2)).exp()
}

/// Logical erasure rate of an `ℓ`-qubit PI block correcting `t` deletions
/// at deletion rate `ε`: `P[Bin(ℓ, ε) > t]`.
pub fn pi_conversion(ell: u64, t: u64, eps: f64) -> f64 {
    assert!(t < ell, "need t < ell");
    binomial_tail_from(ell, t + 1, eps)
}

/// Interpolated achievable-rate polynomial `1 - 2.5p - 2p^2 + 6p^3`, a
/// plotting aid only.
pub fn rate_reference(p: f64) -> f64 {
    1.0 - 2.5 * p - 2.0 * p * p + 6.0 * p * p * p
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EbddCurve {
    pub n: u64,
    pub t: u64,
    pub points: Vec<(f64, f64)>,
}

impl EbddCurve {
    pub fn new(n: u64, t: u64, grid: &[f64]) -> Self {
        Self {
            n,
            t,
            points: grid.iter().map(|&p| (p, ebdd(n, t, p))).collect(),
        }
    }

    /// `t = round(fraction * n)`.
    pub fn for_fraction(n: u64, fraction: f64, grid: &[f64]) -> Self {
        Self::new(n, (fraction * n as f64).round() as u64, grid)
    }
}

/// Failure rate at erasure rate `p` from per-weight estimates:
/// `Σ_w P[Bin(n, p) = w] f(w)`.
///
/// `rates` maps an erasure weight to the estimated failure probability of
/// a uniformly random erasure set of that weight. Weights below the
/// smallest listed weight count as `f = 0` and weights above the largest as
/// `f = 1`; listed weights in between are interpolated linearly.
pub fn stratified_rate(n: u64, p: f64, rates: &BTreeMap<u64, f64>) -> f64 {
    let (Some((&lo, _)), Some((&hi, _))) = (rates.first_key_value(), rates.last_key_value()) else {
        return 0.0;
    };
    let mut acc = Neumaier::default();
    for w in lo..=hi.min(n) {
        let f = match rates.get(&w) {
            Some(&f) => f,
            None => {
                let (&a, &fa) = rates.range(..w).next_back().expect("lo listed");
                let (&b, &fb) = rates.range(w..).next().expect("hi listed");
                fa + (fb - fa) * (w - a) as f64 / (b - a) as f64
            }
        };
        if f > 0.0 {
            acc.add(binomial_pmf(n, w, p) * f);
        }
    }
    if hi < n {
        acc.add(binomial_tail_from(n, hi + 1, p));
    }
    acc.sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::four_one_example;
    use crate::gf2::pauli_string_to_binary;

    fn pb(s: &str) -> BinaryVector {
        pauli_string_to_binary(s).unwrap()
    }

    #[test]
    fn coset_examples() {
        let code = four_one_example();
        assert!(logical_coset_check(&code, &pb("IZII"), &pb("IXIY")));
        assert!(!logical_coset_check(&code, &pb("IZII"), &pb("IXII")));
        assert!(logical_coset_check(&code, &pb("IXIY"), &pb("IXIY")));
        assert!(logical_coset_check(&code, &pb("IXII"), &pb("IZIY")));
    }

    #[test]
    fn stats_taxonomy() {
        let out = DecodeOutcome {
            estimate: BinaryVector::zeros(2),
            status: DecodeStatus::Converged,
            iterations: 3,
            alpha: Some(0.9),
        };
        let s = accumulate(TrialStats::default(), Adjudication::Success, &out);
        assert_eq!((s.trials, s.logical_errors), (1, 0));
        let s = accumulate(TrialStats::default(), Adjudication::FalseConvergence, &out);
        assert_eq!(
            (s.logical_errors, s.false_convergences, s.non_convergences),
            (1, 1, 0)
        );
        let mut a = accumulate(s, Adjudication::NonConvergence, &out);
        a.merge(&accumulate(
            TrialStats::default(),
            Adjudication::Success,
            &out,
        ));
        assert_eq!(a.trials, 3);
        assert_eq!(a.logical_errors, a.non_convergences + a.false_convergences);
        assert_eq!(a.alpha_mode(), Some(0.9));
        assert_eq!(a.avg_iterations(), 3.0);
    }

    #[test]
    fn ebdd_small_cases() {
        for p in [0.0, 0.1, 0.5, 1.0] {
            assert!((ebdd(1, 0, p) - 0.75 * p).abs() < 1e-15);
        }
        assert!((ebdd(4, 4, 1.0) - 0.31640625).abs() < 1e-15);
    }

    #[test]
    fn ebdd_is_monotone() {
        let grid: Vec<f64> = (0..=50).map(|i| i as f64 / 50.0).collect();
        let c = EbddCurve::for_fraction(500, 0.25, &grid);
        assert!(c.points.windows(2).all(|w| w[1].1 >= w[0].1));
        assert!(c.points.iter().all(|&(_, v)| (0.0..=1.0).contains(&v)));
        let by_t: Vec<f64> = (0..=10).map(|t| ebdd(40, t * 4, 0.3)).collect();
        assert!(by_t.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn pi_examples() {
        let p = pi_conversion(4, 1, 0.385);
        assert!((p - 0.4987).abs() < 1e-3, "{p}");
        assert_eq!(pi_conversion(4, 1, 0.0), 0.0);
        assert!(pi_conversion(7, 2, 0.01) < 1e-4);
    }

    #[test]
    fn hoeffding_bound() {
        assert_eq!(ebdd_exponent_bound(100, 0, 0.0), 1.0);
        let b = ebdd_exponent_bound(1000, 250, 0.2);
        assert!(b > 0.0 && b < 1.0);
        assert!(b >= ebdd(1000, 250, 0.2));
    }

    #[test]
    fn stratified_matches_direct_tail() {
        // f = step at w = 10 reproduces the tail probability.
        let rates: BTreeMap<u64, f64> = [(9, 0.0), (10, 1.0)].into_iter().collect();
        let direct = binomial_tail_from(40, 10, 0.2);
        assert!((stratified_rate(40, 0.2, &rates) - direct).abs() < 1e-14);
        let interp: BTreeMap<u64, f64> = [(8, 0.0), (12, 1.0)].into_iter().collect();
        let manual: f64 = (9..=11)
            .map(|w| binomial_pmf(40, w, 0.2) * (w - 8) as f64 / 4.0)
            .sum::<f64>()
            + binomial_tail_from(40, 12, 0.2);
        assert!((stratified_rate(40, 0.2, &interp) - manual).abs() < 1e-14);
    }
}
