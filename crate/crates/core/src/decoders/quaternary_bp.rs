use std::sync::Arc;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::alpha::AlphaList;
use super::binary_bp::{sweep, Attempt};
use super::checks::ActiveChecks;
use super::graph::{make_schedule, Schedule, ScheduleKind, TannerGraph};
use super::llr::{half_tanh, lit, log_add_exp, soften, softplus, Llr, LLR_MAX};
use super::{DecodeInput, DecodeOutcome, DecodeStatus, ErasureDecoder};
use crate::channel::QuaternaryPrior;
use crate::gf2::{BinaryVector, Pauli, PauliMatrix};

/// Log ratios `(ln p^I/p^X, ln p^I/p^Y, ln p^I/p^Z)`.
type Triple<T> = [T; 3];

#[inline]
fn slot(p: Pauli) -> usize {
    match p {
        Pauli::X => 0,
        Pauli::Y => 1,
        Pauli::Z => 2,
        Pauli::I => unreachable!("identity edges are not in the graph"),
    }
}

/// `ln P[E commutes with P] / P[E anticommutes with P]` from the log ratios
/// `γ^W = ln p^I/p^W`.
#[inline]
fn commute_llr<T: Llr>(g: &Triple<T>, p: Pauli) -> T {
    let s = slot(p);
    let (a, b) = ((s + 1) % 3, (s + 2) % 3);
    softplus(-g[s]) - log_add_exp(-g[a], -g[b])
}

/// MBP₄ message-passing state for one decode at one `α`.
///
/// Each edge carries the scalar commute/anticommute LLR with respect to its
/// Pauli label.
pub struct QuaternaryBp<'g, T: Llr> {
    graph: &'g TannerGraph,
    schedule: &'g Schedule,
    checks: ActiveChecks<T>,
    pinned: Vec<bool>,
    active: Vec<u32>,
    lambda: Vec<Triple<T>>,
    gamma: Vec<Triple<T>>,
    v2c: Vec<T>,
    tv: Vec<T>,
    c2v: Vec<T>,
    alpha_inv: T,
    syndrome: &'g BinaryVector,
    iteration: usize,
}

impl<'g, T: Llr> QuaternaryBp<'g, T> {
    /// A qubit with `p^X = p^Y = p^Z = 0` is pinned to `I`.
    pub fn new(
        graph: &'g TannerGraph,
        schedule: &'g Schedule,
        syndrome: &'g BinaryVector,
        prior: &QuaternaryPrior,
        alpha: f64,
    ) -> Self {
        let n = graph.num_vars();
        assert_eq!(prior.n(), n, "one prior per qubit");
        let big = lit::<T>(LLR_MAX);
        let mut pinned = vec![false; n];
        let mut lambda = vec![[T::zero(); 3]; n];
        for j in 0..n {
            let [pi, px, py, pz] = prior.get(j);
            if px == 0.0 && py == 0.0 && pz == 0.0 {
                pinned[j] = true;
                lambda[j] = [T::infinity(); 3];
                continue;
            }
            for (w, pw) in [px, py, pz].into_iter().enumerate() {
                // A zero-probability Pauli is far less likely than any
                // realistic alternative; a large finite ratio keeps the
                // log-sum-exp algebra finite.
                lambda[j][w] = match (pi == 0.0, pw == 0.0) {
                    (_, true) => lit::<T>(4.0 * LLR_MAX),
                    (true, false) => -big,
                    (false, false) => lit::<T>((pi / pw).ln()),
                };
            }
        }
        let active: Vec<u32> = (0..n as u32).filter(|&j| !pinned[j as usize]).collect();
        let checks = ActiveChecks::new(graph, &pinned, syndrome);
        let ne = graph.num_edges();
        let mut v2c = vec![big; ne];
        for &e in checks.all_edges() {
            let e = e as usize;
            v2c[e] = soften(commute_llr(&lambda[graph.edge_var(e)], graph.edge_label(e)));
        }
        let tv = v2c.iter().map(|&x| half_tanh(x)).collect();
        Self {
            graph,
            schedule,
            checks,
            gamma: lambda.clone(),
            pinned,
            active,
            lambda,
            v2c,
            tv,
            c2v: vec![T::zero(); ne],
            alpha_inv: T::one() / lit::<T>(alpha),
            syndrome,
            iteration: 0,
        }
    }

    pub fn step(&mut self, rng: &mut dyn RngCore) -> bool {
        self.iteration += 1;
        match self.schedule.kind() {
            ScheduleKind::Parallel => {
                self.checks.update_all(&self.tv, &mut self.c2v);
                for idx in 0..self.active.len() {
                    self.update_var(self.active[idx] as usize);
                }
            }
            ScheduleKind::GroupRandom => {
                for g in self.schedule.group_order(rng) {
                    for &j in &self.schedule.groups()[g] {
                        let j = j as usize;
                        if self.pinned[j] {
                            continue;
                        }
                        for &e in self.graph.var_edges(j) {
                            let e = e as usize;
                            self.c2v[e] =
                                self.checks.excluding(self.graph.edge_check(e), e, &self.tv);
                        }
                        self.update_var(j);
                    }
                }
            }
        }
        self.syndrome_matches()
    }

    fn update_var(&mut self, j: usize) {
        let edges = self.graph.var_edges(j);
        // Per-label sums S_X, S_Y, S_Z.
        let mut s = [T::zero(); 3];
        for &e in edges {
            let e = e as usize;
            let k = slot(self.graph.edge_label(e));
            s[k] = s[k] + self.c2v[e];
        }
        // W anticommutes with the two labels other than itself.
        let l = self.lambda[j];
        let g = [
            l[0] + self.alpha_inv * (s[1] + s[2]),
            l[1] + self.alpha_inv * (s[0] + s[2]),
            l[2] + self.alpha_inv * (s[0] + s[1]),
        ];
        debug_assert!(
            g.iter().all(|x| x.is_finite()),
            "non-finite belief at qubit {j}"
        );
        self.gamma[j] = g;
        for &e in edges {
            let e = e as usize;
            // Removing the edge's own unscaled message from every anticommuting
            // component shifts the commute LLR by exactly that message.
            let m = soften(commute_llr(&g, self.graph.edge_label(e)) - self.c2v[e]);
            self.v2c[e] = m;
            self.tv[e] = half_tanh(m);
        }
    }

    /// `I` unless some `Γ^W < 0`; otherwise the smallest, ties to X, Y, Z.
    fn decision(&self, j: usize) -> Pauli {
        if self.pinned[j] {
            return Pauli::I;
        }
        let g = &self.gamma[j];
        let mut best = None;
        let mut min = T::zero();
        for (w, p) in [Pauli::X, Pauli::Y, Pauli::Z].into_iter().enumerate() {
            if g[w] < min {
                min = g[w];
                best = Some(p);
            }
        }
        best.unwrap_or(Pauli::I)
    }

    fn syndrome_matches(&self) -> bool {
        let decisions: Vec<Pauli> = (0..self.graph.num_vars())
            .map(|j| self.decision(j))
            .collect();
        (0..self.graph.num_checks()).all(|i| {
            let parity = self
                .checks
                .active_edges(i)
                .iter()
                .filter(|&&e| {
                    let e = e as usize;
                    !decisions[self.graph.edge_var(e)].commutes_with(self.graph.edge_label(e))
                })
                .count()
                % 2
                == 1;
            parity == self.syndrome.get(i)
        })
    }

    pub fn run(&mut self, t_max: usize, rng: &mut dyn RngCore) -> (DecodeStatus, usize) {
        if self.active.is_empty() {
            let ok = self.syndrome_matches();
            return (
                if ok {
                    DecodeStatus::Converged
                } else {
                    DecodeStatus::Fail
                },
                0,
            );
        }
        for _ in 0..t_max {
            if self.step(rng) {
                return (DecodeStatus::Converged, self.iteration);
            }
        }
        (DecodeStatus::Fail, self.iteration)
    }

    /// Binary form `(E^X | E^Z)` of the per-qubit decisions.
    pub fn decisions(&self) -> BinaryVector {
        let n = self.graph.num_vars();
        let mut e = BinaryVector::zeros(2 * n);
        for &j in &self.active {
            let j = j as usize;
            let p = self.decision(j);
            e.set(j, p.x_bit());
            e.set(n + j, p.z_bit());
        }
        e
    }

    /// `(Γ^X, Γ^Y, Γ^Z)` per qubit.
    pub fn beliefs(&self) -> &[[T; 3]] {
        &self.gamma
    }

    pub fn messages(&self) -> impl Iterator<Item = T> + '_ {
        self.checks
            .all_edges()
            .iter()
            .map(|&e| self.v2c[e as usize])
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }
}

/// MBP₄ decoder; with more than one `α` it is AMBP₄.
#[derive(Clone)]
pub struct Mbp4<T: Llr> {
    name: String,
    graph: Arc<TannerGraph>,
    schedule: Arc<Schedule>,
    alphas: AlphaList,
    t_max: usize,
    parallel_alpha: bool,
    _scalar: std::marker::PhantomData<fn() -> T>,
}

impl<T: Llr> Mbp4<T> {
    pub fn new(h: &PauliMatrix, kind: ScheduleKind, alphas: AlphaList, t_max: usize) -> Self {
        let graph = Arc::new(TannerGraph::from_pauli(h));
        let schedule = Arc::new(make_schedule(&graph, kind));
        Self::from_parts(graph, schedule, alphas, t_max)
    }

    pub(crate) fn from_parts(
        graph: Arc<TannerGraph>,
        schedule: Arc<Schedule>,
        alphas: AlphaList,
        t_max: usize,
    ) -> Self {
        let name = if alphas.len() == 1 { "mbp4" } else { "ambp4" }.to_string();
        Self {
            name,
            graph,
            schedule,
            alphas,
            t_max,
            parallel_alpha: false,
            _scalar: std::marker::PhantomData,
        }
    }

    pub fn with_parallel_alpha(mut self, on: bool) -> Self {
        self.parallel_alpha = on;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn alphas(&self) -> &AlphaList {
        &self.alphas
    }

    fn attempt(&self, input: &DecodeInput<'_>, idx: usize, base: u64) -> Attempt {
        let mut rng = ChaCha8Rng::seed_from_u64(base);
        rng.set_stream(idx as u64);
        let alpha = self.alphas.as_slice()[idx];
        let mut bp = QuaternaryBp::<T>::new(
            &self.graph,
            &self.schedule,
            input.syndrome,
            input.prior,
            alpha,
        );
        let (status, iterations) = bp.run(self.t_max, &mut rng);
        Attempt {
            decisions: bp.decisions(),
            status,
            iterations,
        }
    }
}

impl<T: Llr> ErasureDecoder for Mbp4<T> {
    fn name(&self) -> &str {
        &self.name
    }

    fn decode(&self, input: &DecodeInput<'_>, rng: &mut dyn RngCore) -> DecodeOutcome {
        let base = rng.next_u64();
        let (best, alpha, iterations) = sweep(
            self.alphas.len(),
            self.parallel_alpha,
            self.alphas.as_slice(),
            |i| self.attempt(input, i, base),
        );
        DecodeOutcome {
            estimate: best.decisions,
            status: best.status,
            iterations,
            alpha,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commute_llr_of_uniform_and_biased_priors() {
        let zero = [0.0f64; 3];
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            assert!(commute_llr(&zero, p).abs() < 1e-15);
        }
        // p = (0.7, 0.1, 0.1, 0.1): commute with X has mass 0.8.
        let g = [7f64.ln(); 3];
        assert!((commute_llr(&g, Pauli::X) - (0.8f64 / 0.2).ln()).abs() < 1e-12);
    }

    #[test]
    fn shifting_anticommuting_components_shifts_the_llr() {
        let g = [0.3f64, -1.1, 2.0];
        let d = 0.77;
        // For label Y the anticommuting components are X and Z.
        let shifted = [g[0] - d, g[1], g[2] - d];
        let lhs = commute_llr(&shifted, Pauli::Y);
        assert!((lhs - (commute_llr(&g, Pauli::Y) - d)).abs() < 1e-12);
    }
}
