use rand::seq::SliceRandom;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::gf2::{BinaryMatrix, Pauli, PauliMatrix};

/// Bipartite check/variable graph in compressed form.
///
/// Edges are numbered check by check; `var_edges` lists the same edge ids
/// grouped by variable.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    num_checks: usize,
    num_vars: usize,
    check_start: Vec<usize>,
    edge_var: Vec<u32>,
    edge_check: Vec<u32>,
    edge_label: Vec<Pauli>,
    var_start: Vec<usize>,
    var_edges: Vec<u32>,
}

impl TannerGraph {
    /// Graph of a binary matrix; every edge is labelled `X`.
    pub fn from_binary(h: &BinaryMatrix) -> Self {
        let triples = (0..h.rows()).flat_map(|r| h.row_ones(r).map(move |c| (r, c, Pauli::X)));
        Self::from_edges(h.rows(), h.cols(), triples)
    }

    /// Graph of a Pauli matrix with one edge per non-identity entry,
    /// labelled by that entry.
    pub fn from_pauli(h: &PauliMatrix) -> Self {
        let triples = (0..h.rows()).flat_map(|r| {
            h.row(r)
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != Pauli::I)
                .map(move |(c, &p)| (r, c, p))
        });
        Self::from_edges(h.rows(), h.cols(), triples)
    }

    fn from_edges(
        num_checks: usize,
        num_vars: usize,
        triples: impl Iterator<Item = (usize, usize, Pauli)>,
    ) -> Self {
        let mut check_start = vec![0; num_checks + 1];
        let mut edge_var = Vec::new();
        let mut edge_check = Vec::new();
        let mut edge_label = Vec::new();
        for (r, c, p) in triples {
            check_start[r + 1] += 1;
            edge_var.push(c as u32);
            edge_check.push(r as u32);
            edge_label.push(p);
        }
        for i in 0..num_checks {
            check_start[i + 1] += check_start[i];
        }
        let mut var_start = vec![0; num_vars + 1];
        for &v in &edge_var {
            var_start[v as usize + 1] += 1;
        }
        for j in 0..num_vars {
            var_start[j + 1] += var_start[j];
        }
        let mut fill = var_start.clone();
        let mut var_edges = vec![0; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[fill[v as usize]] = e as u32;
            fill[v as usize] += 1;
        }
        Self {
            num_checks,
            num_vars,
            check_start,
            edge_var,
            edge_check,
            edge_label,
            var_start,
            var_edges,
        }
    }

    pub fn num_checks(&self) -> usize {
        self.num_checks
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_edges(&self) -> usize {
        self.edge_var.len()
    }

    /// Edge ids of check `i`.
    #[inline]
    pub fn check_edges(&self, i: usize) -> std::ops::Range<usize> {
        self.check_start[i]..self.check_start[i + 1]
    }

    /// Edge ids of variable `j`.
    #[inline]
    pub fn var_edges(&self, j: usize) -> &[u32] {
        &self.var_edges[self.var_start[j]..self.var_start[j + 1]]
    }

    #[inline]
    pub fn edge_var(&self, e: usize) -> usize {
        self.edge_var[e] as usize
    }

    #[inline]
    pub fn edge_check(&self, e: usize) -> usize {
        self.edge_check[e] as usize
    }

    #[inline]
    pub fn edge_label(&self, e: usize) -> Pauli {
        self.edge_label[e]
    }

    /// Variables adjacent to check `i`.
    pub fn check_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.check_edges(i).map(|e| self.edge_var(e))
    }

    /// Checks adjacent to variable `j`.
    pub fn var_neighbors(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.var_edges(j)
            .iter()
            .map(|&e| self.edge_check(e as usize))
    }

    pub fn var_degree(&self, j: usize) -> usize {
        self.var_start[j + 1] - self.var_start[j]
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleKind {
    /// All checks, then all variables.
    #[default]
    Parallel,
    /// Variables split into groups with pairwise disjoint check
    /// neighbourhoods; groups run one after another in a fresh random order
    /// every iteration.
    GroupRandom,
}

impl ScheduleKind {
    pub fn id(self) -> &'static str {
        match self {
            ScheduleKind::Parallel => "parallel",
            ScheduleKind::GroupRandom => "group_random",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Schedule {
    kind: ScheduleKind,
    groups: Vec<Vec<u32>>,
}

impl Schedule {
    pub fn kind(&self) -> ScheduleKind {
        self.kind
    }

    pub fn groups(&self) -> &[Vec<u32>] {
        &self.groups
    }

    /// Group indices in processing order for one iteration.
    pub(crate) fn group_order(&self, rng: &mut dyn RngCore) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.groups.len()).collect();
        if self.kind == ScheduleKind::GroupRandom {
            order.shuffle(rng);
        }
        order
    }
}

/// Builds the variable grouping for `kind`.
///
/// `GroupRandom` visits variables in ascending order and puts each into the
/// first group none of whose members shares a check with it, opening a new
/// group when none fits.
pub fn make_schedule(graph: &TannerGraph, kind: ScheduleKind) -> Schedule {
    let groups = match kind {
        ScheduleKind::Parallel => vec![(0..graph.num_vars() as u32).collect()],
        ScheduleKind::GroupRandom => {
            let mut groups: Vec<Vec<u32>> = Vec::new();
            let mut used: Vec<Vec<bool>> = Vec::new();
            for j in 0..graph.num_vars() {
                let slot = (0..groups.len()).find(|&g| graph.var_neighbors(j).all(|i| !used[g][i]));
                let g = slot.unwrap_or_else(|| {
                    groups.push(Vec::new());
                    used.push(vec![false; graph.num_checks()]);
                    groups.len() - 1
                });
                groups[g].push(j as u32);
                for i in graph.var_neighbors(j) {
                    used[g][i] = true;
                }
            }
            groups
        }
    };
    Schedule { kind, groups }
}
