//! Greedy agglomerative modularity maximisation on weighted graphs.
//!
//! Starts from singleton communities and repeatedly applies the merge
//! with the largest modularity gain until no merge improves. Ties on the
//! gain break toward the lexicographically smallest community pair, and
//! final labels follow each community's smallest node id, so the result
//! is deterministic.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::DailyGraph;

struct MergeState {
    // per community: weights to adjacent communities, total incident
    // weight (sum of member weighted degrees), and internal edge weight
    adj: Vec<BTreeMap<usize, f64>>,
    tot: Vec<f64>,
    internal: Vec<f64>,
    members: Vec<Vec<u32>>,
    alive: Vec<bool>,
}

impl MergeState {
    fn new(graph: &DailyGraph) -> MergeState {
        let n = graph.node_count() as usize;
        let mut adj: Vec<BTreeMap<usize, f64>> = alloc::vec![BTreeMap::new(); n];
        let mut tot = alloc::vec![0.0; n];
        for (u, v, w) in graph.edges() {
            adj[u as usize].insert(v as usize, w);
            adj[v as usize].insert(u as usize, w);
            tot[u as usize] += w;
            tot[v as usize] += w;
        }
        MergeState {
            adj,
            tot,
            internal: alloc::vec![0.0; n],
            members: (0..n as u32).map(|u| alloc::vec![u]).collect(),
            alive: alloc::vec![true; n],
        }
    }

    /// Best merge by modularity gain; ties prefer the smallest (i, j).
    fn best_merge(&self, m_hat: f64) -> Option<(usize, usize, f64)> {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..self.adj.len() {
            if !self.alive[i] {
                continue;
            }
            for (&j, &e_ij) in &self.adj[i] {
                if j <= i {
                    continue;
                }
                let dq = e_ij / m_hat - self.tot[i] * self.tot[j] / (2.0 * m_hat * m_hat);
                let better = match best {
                    None => true,
                    Some((bi, bj, bq)) => dq > bq || (dq == bq && (i, j) < (bi, bj)),
                };
                if better {
                    best = Some((i, j, dq));
                }
            }
        }
        best
    }

    fn merge(&mut self, i: usize, j: usize) {
        let e_ij = self.adj[i].get(&j).copied().unwrap_or(0.0);
        self.internal[i] += self.internal[j] + e_ij;
        self.tot[i] += self.tot[j];
        let j_adj = core::mem::take(&mut self.adj[j]);
        for (k, w) in j_adj {
            if k == i {
                continue;
            }
            *self.adj[i].entry(k).or_insert(0.0) += w;
            let k_adj = &mut self.adj[k];
            k_adj.remove(&j);
            *k_adj.entry(i).or_insert(0.0) += w;
        }
        self.adj[i].remove(&j);
        let moved = core::mem::take(&mut self.members[j]);
        self.members[i].extend(moved);
        self.alive[j] = false;
    }
}

/// Greedy modularity partition of one day's graph. Returns the node to
/// community assignment (labels ordered by each community's smallest
/// node id) and the modularity of the final partition. `None` when the
/// graph has no edges.
pub fn modularity_partition(graph: &DailyGraph) -> Option<(Vec<u32>, f64)> {
    if graph.edge_count() == 0 {
        return None;
    }
    let m_hat = graph.total_weight();
    let mut state = MergeState::new(graph);
    // singleton partition: every internal weight is zero
    let mut q: f64 = state
        .tot
        .iter()
        .map(|&t| -(t / (2.0 * m_hat)) * (t / (2.0 * m_hat)))
        .sum();
    while let Some((i, j, dq)) = state.best_merge(m_hat) {
        if dq <= 0.0 {
            break;
        }
        state.merge(i, j);
        q += dq;
    }
    // label communities by their smallest member id
    let n = graph.node_count() as usize;
    let mut reps: Vec<usize> = (0..n).filter(|&c| state.alive[c]).collect();
    reps.sort_unstable_by_key(|&c| state.members[c].iter().min().copied());
    let mut assignment = alloc::vec![0u32; n];
    for (label, &c) in reps.iter().enumerate() {
        for &u in &state.members[c] {
            assignment[u as usize] = label as u32;
        }
    }
    debug_assert!((q - recompute_modularity(graph, &assignment)).abs() < 1e-9);
    Some((assignment, q))
}

/// Modularity of an arbitrary assignment, computed from scratch:
/// Q = sum_c (in_c / m - (tot_c / 2m)^2) with weighted degrees.
pub fn recompute_modularity(graph: &DailyGraph, assignment: &[u32]) -> f64 {
    let m_hat = graph.total_weight();
    if m_hat == 0.0 {
        return 0.0;
    }
    let n_comms = assignment
        .iter()
        .map(|&c| c as usize + 1)
        .max()
        .unwrap_or(0);
    let mut internal = alloc::vec![0.0; n_comms];
    let mut tot = alloc::vec![0.0; n_comms];
    for (u, v, w) in graph.edges() {
        let cu = assignment[u as usize] as usize;
        let cv = assignment[v as usize] as usize;
        if cu == cv {
            internal[cu] += w;
        }
        tot[cu] += w;
        tot[cv] += w;
    }
    (0..n_comms)
        .map(|c| internal[c] / m_hat - (tot[c] / (2.0 * m_hat)) * (tot[c] / (2.0 * m_hat)))
        .sum()
}
