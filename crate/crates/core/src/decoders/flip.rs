use std::sync::Arc;

use rand::RngCore;

use super::graph::TannerGraph;
use super::{DecodeInput, DecodeOutcome, DecodeStatus, ErasureDecoder};
use crate::gf2::{BinaryMatrix, BinaryVector};

/// GD Flip-BP₂ state: every bit is known 0, known 1 or unknown.
///
/// One iteration counts the unknown neighbours of every check as they stand
/// at the start of the iteration; each check with exactly one unknown
/// neighbour sets it to satisfy the check (a later check overwrites an
/// earlier one). If no check fired, the unknown with the largest column
/// weight (lowest index on ties) is set to 1. Settled bits then leave the
/// unknown set.
pub struct GdFlipState<'g> {
    graph: &'g TannerGraph,
    syndrome: &'g BinaryVector,
    /// `Some(bit)` once known.
    value: Vec<Option<bool>>,
    unknown: Vec<usize>,
    iteration: usize,
}

impl<'g> GdFlipState<'g> {
    /// Bits in `unknown` start unknown; all others are known zero.
    pub fn new(graph: &'g TannerGraph, syndrome: &'g BinaryVector, unknown: &[usize]) -> Self {
        let mut value = vec![Some(false); graph.num_vars()];
        for &j in unknown {
            value[j] = None;
        }
        let mut unknown = unknown.to_vec();
        unknown.sort_unstable();
        unknown.dedup();
        Self {
            graph,
            syndrome,
            value,
            unknown,
            iteration: 0,
        }
    }

    /// `Σ_i |N(i) ∩ unknown|`, the number of unresolved check incidences.
    pub fn objective(&self) -> usize {
        self.unknown.iter().map(|&j| self.graph.var_degree(j)).sum()
    }

    pub fn unknown(&self) -> &[usize] {
        &self.unknown
    }

    /// One iteration; returns whether the GD fallback fired.
    pub fn step(&mut self) -> bool {
        self.iteration += 1;
        let g = self.graph;
        let mut writes: Vec<(usize, bool)> = Vec::new();
        for i in 0..g.num_checks() {
            let mut free = None;
            let mut count = 0;
            let mut parity = self.syndrome.get(i);
            for j in g.check_neighbors(i) {
                match self.value[j] {
                    None => {
                        count += 1;
                        free = Some(j);
                    }
                    Some(b) => parity ^= b,
                }
            }
            if count == 1 {
                writes.push((free.expect("one unknown"), parity));
            }
        }
        let gd = writes.is_empty();
        if gd {
            let j = *self
                .unknown
                .iter()
                .max_by(|&&a, &&b| g.var_degree(a).cmp(&g.var_degree(b)).then(b.cmp(&a)))
                .expect("step called with unknowns left");
            writes.push((j, true));
        }
        for &(j, b) in &writes {
            self.value[j] = Some(b);
        }
        self.unknown.retain(|&j| self.value[j].is_none());
        gd
    }

    /// Unknown bits read as zero.
    pub fn estimate(&self) -> BinaryVector {
        BinaryVector::from_indices(
            self.value.len(),
            (0..self.value.len()).filter(|&j| self.value[j] == Some(true)),
        )
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn run(&mut self, t_max: usize) -> DecodeStatus {
        loop {
            if self.unknown.is_empty() {
                let s = BinaryVector::from_bools(
                    &(0..self.graph.num_checks())
                        .map(|i| {
                            self.graph
                                .check_neighbors(i)
                                .filter(|&j| self.value[j] == Some(true))
                                .count()
                                % 2
                                == 1
                        })
                        .collect::<Vec<_>>(),
                );
                return if &s == self.syndrome {
                    DecodeStatus::Converged
                } else {
                    DecodeStatus::GdFail
                };
            }
            if self.iteration >= t_max {
                return DecodeStatus::Fail;
            }
            self.step();
        }
    }
}

/// GD Flip-BP₂ over the swapped check matrix `[H^Z | H^X]`.
#[derive(Clone)]
pub struct GdFlip {
    graph: Arc<TannerGraph>,
    t_max: usize,
}

impl GdFlip {
    pub fn new(h_swapped: &BinaryMatrix, t_max: usize) -> Self {
        Self::from_graph(Arc::new(TannerGraph::from_binary(h_swapped)), t_max)
    }

    pub(crate) fn from_graph(graph: Arc<TannerGraph>, t_max: usize) -> Self {
        Self { graph, t_max }
    }
}

impl ErasureDecoder for GdFlip {
    fn name(&self) -> &str {
        "gd_flip"
    }

    fn decode(&self, input: &DecodeInput<'_>, _rng: &mut dyn RngCore) -> DecodeOutcome {
        let mut state =
            GdFlipState::new(&self.graph, input.syndrome, &input.pattern.bit_positions());
        let status = state.run(self.t_max);
        DecodeOutcome {
            estimate: state.estimate(),
            status,
            iterations: state.iteration(),
            alpha: None,
        }
    }
}
