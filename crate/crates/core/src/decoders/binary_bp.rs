use std::sync::Arc;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::alpha::AlphaList;
use super::checks::ActiveChecks;
use super::graph::{make_schedule, Schedule, ScheduleKind, TannerGraph};
use super::llr::{half_tanh, lit, prob_llr, soften, Llr, LLR_MAX};
use super::{DecodeInput, DecodeOutcome, DecodeStatus, ErasureDecoder, GdOpts};
use crate::gf2::{BinaryMatrix, BinaryVector};

/// MBP₂ message-passing state for one decode at one `α`.
///
/// Variable `j` of the graph is bit `j` of the binary error `(E^X | E^Z)`;
/// the graph comes from the swapped check matrix `[H^Z | H^X]`.
pub struct BinaryBp<'g, T: Llr> {
    graph: &'g TannerGraph,
    schedule: &'g Schedule,
    checks: ActiveChecks<T>,
    pinned: Vec<bool>,
    active: Vec<u32>,
    lambda: Vec<T>,
    gamma: Vec<T>,
    v2c: Vec<T>,
    tv: Vec<T>,
    c2v: Vec<T>,
    alpha_inv: T,
    gd: Option<(usize, T)>,
    syndrome: &'g BinaryVector,
    iteration: usize,
}

impl<'g, T: Llr> BinaryBp<'g, T> {
    /// `priors[j] = (P[bit j = 0], P[bit j = 1])`. A zero probability of 1
    /// pins the bit to 0.
    pub fn new(
        graph: &'g TannerGraph,
        schedule: &'g Schedule,
        syndrome: &'g BinaryVector,
        priors: &[[f64; 2]],
        alpha: f64,
        gd: Option<GdOpts>,
    ) -> Self {
        let nv = graph.num_vars();
        assert_eq!(priors.len(), nv, "one prior per variable");
        let pinned: Vec<bool> = priors.iter().map(|p| p[1] == 0.0).collect();
        let lambda: Vec<T> = priors
            .iter()
            .map(|p| {
                let l = prob_llr::<T>(p[0], p[1]);
                if l == T::neg_infinity() {
                    -lit::<T>(LLR_MAX)
                } else {
                    l
                }
            })
            .collect();
        let active: Vec<u32> = (0..nv as u32).filter(|&j| !pinned[j as usize]).collect();
        let checks = ActiveChecks::new(graph, &pinned, syndrome);
        let ne = graph.num_edges();
        let mut v2c = vec![lit::<T>(LLR_MAX); ne];
        for &e in checks.all_edges() {
            let e = e as usize;
            v2c[e] = soften(lambda[graph.edge_var(e)]);
        }
        let tv = v2c.iter().map(|&x| half_tanh(x)).collect();
        let mut gamma = lambda.clone();
        for j in 0..nv {
            if pinned[j] {
                gamma[j] = T::infinity();
            }
        }
        Self {
            graph,
            schedule,
            checks,
            pinned,
            active,
            lambda,
            gamma,
            v2c,
            tv,
            c2v: vec![T::zero(); ne],
            alpha_inv: T::one() / lit::<T>(alpha),
            gd: gd.map(|g| (g.t_gd.max(1), lit::<T>(g.lambda_gd.abs()))),
            syndrome,
            iteration: 0,
        }
    }

    /// Runs one iteration and reports whether the hard decision matches the
    /// syndrome afterwards.
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
        if let Some((t_gd, lambda_gd)) = self.gd {
            if self.iteration % t_gd == 0 {
                for &j in &self.active {
                    let j = j as usize;
                    let g = self.gamma[j];
                    if g.abs() < lambda_gd {
                        self.lambda[j] = if g < T::zero() { -lambda_gd } else { lambda_gd };
                    }
                }
            }
        }
        self.syndrome_matches()
    }

    fn update_var(&mut self, j: usize) {
        let edges = self.graph.var_edges(j);
        let mut sum = T::zero();
        for &e in edges {
            sum = sum + self.c2v[e as usize];
        }
        let gamma = self.lambda[j] + self.alpha_inv * sum;
        debug_assert!(gamma.is_finite(), "non-finite belief at variable {j}");
        self.gamma[j] = gamma;
        for &e in edges {
            let e = e as usize;
            let m = soften(gamma - self.c2v[e]);
            self.v2c[e] = m;
            self.tv[e] = half_tanh(m);
        }
    }

    fn syndrome_matches(&self) -> bool {
        (0..self.graph.num_checks()).all(|i| {
            let parity = self
                .checks
                .active_edges(i)
                .iter()
                .filter(|&&e| self.gamma[self.graph.edge_var(e as usize)] < T::zero())
                .count()
                % 2
                == 1;
            parity == self.syndrome.get(i)
        })
    }

    /// Iterates until convergence or `t_max` iterations.
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

    /// Hard decision `Γ_j < 0 ↦ 1`.
    pub fn decisions(&self) -> BinaryVector {
        BinaryVector::from_indices(
            self.gamma.len(),
            self.active
                .iter()
                .map(|&j| j as usize)
                .filter(|&j| self.gamma[j] < T::zero()),
        )
    }

    pub fn beliefs(&self) -> &[T] {
        &self.gamma
    }

    /// Variable-to-check messages on edges to active variables.
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

/// MBP₂ decoder; with more than one `α` it is AMBP₂, returning the first
/// `α` in list order whose run converges.
#[derive(Clone)]
pub struct Mbp2<T: Llr> {
    name: String,
    graph: Arc<TannerGraph>,
    schedule: Arc<Schedule>,
    alphas: AlphaList,
    t_max: usize,
    gd: Option<GdOpts>,
    parallel_alpha: bool,
    _scalar: std::marker::PhantomData<fn() -> T>,
}

impl<T: Llr> Mbp2<T> {
    /// `h_swapped` is `[H^Z | H^X]`.
    pub fn new(
        h_swapped: &BinaryMatrix,
        kind: ScheduleKind,
        alphas: AlphaList,
        t_max: usize,
        gd: Option<GdOpts>,
    ) -> Self {
        let graph = Arc::new(TannerGraph::from_binary(h_swapped));
        let schedule = Arc::new(make_schedule(&graph, kind));
        Self::from_parts(graph, schedule, alphas, t_max, gd)
    }

    pub(crate) fn from_parts(
        graph: Arc<TannerGraph>,
        schedule: Arc<Schedule>,
        alphas: AlphaList,
        t_max: usize,
        gd: Option<GdOpts>,
    ) -> Self {
        let name = if alphas.len() == 1 { "mbp2" } else { "ambp2" }.to_string();
        Self {
            name,
            graph,
            schedule,
            alphas,
            t_max,
            gd,
            parallel_alpha: false,
            _scalar: std::marker::PhantomData,
        }
    }

    /// Runs `α` attempts concurrently in chunks; results equal the serial
    /// sweep.
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

    fn attempt(
        &self,
        input: &DecodeInput<'_>,
        priors: &[[f64; 2]],
        idx: usize,
        base: u64,
    ) -> Attempt {
        let mut rng = ChaCha8Rng::seed_from_u64(base);
        rng.set_stream(idx as u64);
        let alpha = self.alphas.as_slice()[idx];
        let mut bp = BinaryBp::<T>::new(
            &self.graph,
            &self.schedule,
            input.syndrome,
            priors,
            alpha,
            self.gd,
        );
        let (status, iterations) = bp.run(self.t_max, &mut rng);
        Attempt {
            decisions: bp.decisions(),
            status,
            iterations,
        }
    }
}

pub(crate) struct Attempt {
    pub decisions: BinaryVector,
    pub status: DecodeStatus,
    pub iterations: usize,
}

/// First converging attempt in list order, with iterations summed up to it.
pub(crate) fn sweep(
    count: usize,
    parallel: bool,
    alphas: &[f64],
    run: impl Fn(usize) -> Attempt + Sync,
) -> (Attempt, Option<f64>, usize) {
    let mut total = 0;
    let mut last = None;
    let chunk = if parallel {
        rayon::current_num_threads().max(1)
    } else {
        1
    };
    let mut start = 0;
    while start < count {
        let end = (start + chunk).min(count);
        let batch: Vec<Attempt> = if parallel && end - start > 1 {
            (start..end).into_par_iter().map(&run).collect()
        } else {
            (start..end).map(&run).collect()
        };
        for (offset, a) in batch.into_iter().enumerate() {
            total += a.iterations;
            if a.status == DecodeStatus::Converged {
                return (a, Some(alphas[start + offset]), total);
            }
            last = Some(a);
        }
        start = end;
    }
    (last.expect("at least one alpha"), None, total)
}

impl<T: Llr> ErasureDecoder for Mbp2<T> {
    fn name(&self) -> &str {
        &self.name
    }

    fn decode(&self, input: &DecodeInput<'_>, rng: &mut dyn RngCore) -> DecodeOutcome {
        let priors = input.prior.binary();
        let base = rng.next_u64();
        let (best, alpha, iterations) = sweep(
            self.alphas.len(),
            self.parallel_alpha,
            self.alphas.as_slice(),
            |i| self.attempt(input, &priors, i, base),
        );
        DecodeOutcome {
            estimate: best.decisions,
            status: best.status,
            iterations,
            alpha,
        }
    }
}
