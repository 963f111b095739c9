//! Check-node pass shared by the binary and quaternary engines.
//!
//! Only edges to active (unpinned) variables carry information; a pinned
//! variable always sends `+LLR_MAX`, so its factor `tanh(LLR_MAX / 2)` is
//! folded into a per-check constant.

use super::graph::TannerGraph;
use super::llr::{lit, two_atanh, Llr, LLR_MAX};
use crate::gf2::BinaryVector;

pub(crate) struct ActiveChecks<T> {
    /// Checks with at least one active edge.
    checks: Vec<u32>,
    /// Active edge ids per check, indexed by check id.
    start: Vec<u32>,
    edges: Vec<u32>,
    /// `(-1)^{s_i} tanh(LLR_MAX/2)^{pinned degree}` per check.
    base: Vec<T>,
}

impl<T: Llr> ActiveChecks<T> {
    pub(crate) fn new(graph: &TannerGraph, pinned: &[bool], syndrome: &BinaryVector) -> Self {
        assert_eq!(syndrome.len(), graph.num_checks(), "syndrome length");
        let t_max = lit::<T>(LLR_MAX / 2.0).tanh();
        let mut checks = Vec::new();
        let mut start = Vec::with_capacity(graph.num_checks() + 1);
        let mut edges = Vec::new();
        let mut base = Vec::with_capacity(graph.num_checks());
        start.push(0);
        for i in 0..graph.num_checks() {
            let mut factor = if syndrome.get(i) { -T::one() } else { T::one() };
            let before = edges.len();
            for e in graph.check_edges(i) {
                if pinned[graph.edge_var(e)] {
                    factor = factor * t_max;
                } else {
                    edges.push(e as u32);
                }
            }
            if edges.len() > before {
                checks.push(i as u32);
            }
            start.push(edges.len() as u32);
            base.push(factor);
        }
        Self {
            checks,
            start,
            edges,
            base,
        }
    }

    #[inline]
    pub(crate) fn active_edges(&self, i: usize) -> &[u32] {
        &self.edges[self.start[i] as usize..self.start[i + 1] as usize]
    }

    /// Every active edge, grouped by check.
    pub(crate) fn all_edges(&self) -> &[u32] {
        &self.edges
    }

    /// Parallel pass: `Δ_i` by one product, then one division per edge.
    pub(crate) fn update_all(&self, tv: &[T], c2v: &mut [T]) {
        for &i in &self.checks {
            let i = i as usize;
            let edges = self.active_edges(i);
            let mut prod = self.base[i];
            for &e in edges {
                prod = prod * tv[e as usize];
            }
            if prod != T::zero() {
                for &e in edges {
                    let e = e as usize;
                    c2v[e] = two_atanh(prod / tv[e]);
                }
            } else {
                // Underflow: fall back to explicit exclusion products.
                for &e in edges {
                    c2v[e as usize] = self.excluding(i, e as usize, tv);
                }
            }
        }
    }

    /// `Δ_{i→j}` for the single edge `e` of check `i`.
    #[inline]
    pub(crate) fn excluding(&self, i: usize, e: usize, tv: &[T]) -> T {
        let mut prod = self.base[i];
        for &f in self.active_edges(i) {
            if f as usize != e {
                prod = prod * tv[f as usize];
            }
        }
        two_atanh(prod)
    }
}
