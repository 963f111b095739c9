use std::collections::VecDeque;
use std::fmt;

use crate::gf2::BinaryMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

/// Shortest cycle in the bipartite Tanner graph of `h` (checks are rows,
/// variables are columns), by breadth-first search from every node.
pub fn girth(h: &BinaryMatrix) -> Girth {
    let m = h.rows();
    let total = m + h.cols();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); total];
    for r in 0..m {
        for c in h.row_ones(r) {
            adj[r].push((m + c) as u32);
            adj[m + c].push(r as u32);
        }
    }

    let mut best = usize::MAX;
    let mut dist = vec![u32::MAX; total];
    let mut parent = vec![u32::MAX; total];
    let mut queue = VecDeque::new();
    let mut touched = Vec::new();
    for root in 0..total {
        if adj[root].len() < 2 {
            continue;
        }
        for &t in &touched {
            dist[t] = u32::MAX;
            parent[t] = u32::MAX;
        }
        touched.clear();
        queue.clear();
        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            let du = dist[u] as usize;
            if 2 * du + 1 >= best {
                break;
            }
            for &v in &adj[u] {
                let v = v as usize;
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u as u32;
                    touched.push(v);
                    queue.push_back(v);
                } else if parent[u] as usize != v {
                    best = best.min(du + dist[v] as usize + 1);
                    if 2 * du + 1 >= best {
                        break 'bfs;
                    }
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}
