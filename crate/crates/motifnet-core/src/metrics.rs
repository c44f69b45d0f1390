//! Whole-graph daily metrics: giant component, hop diameter, greedy
//! modularity, density over the fixed zone universe, and average degree.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::community::modularity_partition;
use crate::error::{CoreError, Result};
use crate::graph::{DailyGraph, TemporalNetwork};

/// BFS distances from `src`, restricted to nodes flagged in `member`.
/// Unreachable or excluded nodes stay at u32::MAX.
fn bfs_distances(graph: &DailyGraph, src: u32, member: &[bool], dist: &mut [u32]) {
    dist.fill(u32::MAX);
    dist[src as usize] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for (v, _) in graph.neighbors(u) {
            if member[v as usize] && dist[v as usize] == u32::MAX {
                dist[v as usize] = du + 1;
                queue.push_back(v);
            }
        }
    }
}

/// Nodes of the largest connected component, sorted ascending. Ties in
/// size go to the component containing the smallest node id. An edgeless
/// graph yields the singleton {0}.
pub fn giant_component(graph: &DailyGraph) -> Vec<u32> {
    let n = graph.node_count() as usize;
    let mut visited = alloc::vec![false; n];
    let mut best: Vec<u32> = Vec::new();
    for start in 0..n as u32 {
        if visited[start as usize] {
            continue;
        }
        // first unvisited id is this component's minimum, so scanning in
        // ascending order resolves size ties toward the smaller min id
        let mut component = alloc::vec![start];
        visited[start as usize] = true;
        let mut head = 0;
        while head < component.len() {
            let u = component[head];
            head += 1;
            for (v, _) in graph.neighbors(u) {
                if !visited[v as usize] {
                    visited[v as usize] = true;
                    component.push(v);
                }
            }
        }
        if component.len() > best.len() {
            best = component;
        }
    }
    best.sort_unstable();
    best
}

fn membership(n: usize, component: &[u32]) -> Vec<bool> {
    let mut member = alloc::vec![false; n];
    for &u in component {
        member[u as usize] = true;
    }
    member
}

/// Exact hop diameter of the subgraph induced on `component`: the
/// maximum BFS eccentricity over all its nodes. Errors if the induced
/// subgraph is not connected.
pub fn diameter(graph: &DailyGraph, component: &[u32]) -> Result<u32> {
    let n = graph.node_count() as usize;
    let member = membership(n, component);
    let mut dist = alloc::vec![u32::MAX; n];
    let mut best = 0u32;
    for &src in component {
        bfs_distances(graph, src, &member, &mut dist);
        let mut ecc = 0u32;
        for &u in component {
            let d = dist[u as usize];
            if d == u32::MAX {
                return Err(CoreError::DisconnectedInput);
            }
            ecc = ecc.max(d);
        }
        best = best.max(ecc);
    }
    Ok(best)
}

/// Double-sweep lower bound on the hop diameter: eccentricity of the
/// farthest node from `component[0]`. Never exceeds [`diameter`].
pub fn double_sweep_lower_bound(graph: &DailyGraph, component: &[u32]) -> Result<u32> {
    if component.is_empty() {
        return Err(CoreError::DisconnectedInput);
    }
    let n = graph.node_count() as usize;
    let member = membership(n, component);
    let mut dist = alloc::vec![u32::MAX; n];
    bfs_distances(graph, component[0], &member, &mut dist);
    let mut far = component[0];
    let mut far_d = 0u32;
    for &u in component {
        let d = dist[u as usize];
        if d == u32::MAX {
            return Err(CoreError::DisconnectedInput);
        }
        // strict comparison keeps the smallest id among equally far nodes
        if d > far_d {
            far_d = d;
            far = u;
        }
    }
    bfs_distances(graph, far, &member, &mut dist);
    let mut ecc = 0u32;
    for &u in component {
        ecc = ecc.max(dist[u as usize]);
    }
    Ok(ecc)
}

/// One day's global measurements. `modularity` is `None` on edgeless
/// days; `avg_degree` is defined as `density * (n - 1)` so the identity
/// between the two holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalMetrics {
    pub day: u32,
    pub giant_component_size: u32,
    pub diameter: u32,
    pub modularity: Option<f64>,
    pub density: f64,
    pub avg_degree: f64,
}

/// Edge density over the fixed universe of `n` nodes.
pub fn density(graph: &DailyGraph) -> f64 {
    let n = graph.node_count() as f64;
    if n < 2.0 {
        return 0.0;
    }
    2.0 * graph.edge_count() as f64 / (n * (n - 1.0))
}

/// Metrics for a single day's graph.
pub fn global_metrics(graph: &DailyGraph) -> GlobalMetrics {
    let gc = giant_component(graph);
    let diameter = diameter(graph, &gc).expect("giant component is connected");
    let modularity = modularity_partition(graph).map(|(_, q)| q);
    let density = density(graph);
    let n = graph.node_count() as f64;
    GlobalMetrics {
        day: graph.day(),
        giant_component_size: gc.len() as u32,
        diameter,
        modularity,
        density,
        avg_degree: density * (n - 1.0),
    }
}

/// Metrics for every day of the network, in day order.
pub fn daily_global_metrics(network: &TemporalNetwork) -> Vec<GlobalMetrics> {
    network.days().iter().map(global_metrics).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Weekday;
    use std::vec;

    fn graph(n: u32, edges: &[(u32, u32)]) -> DailyGraph {
        let weighted: vec::Vec<(u32, u32, f64)> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        DailyGraph::from_undirected_edges(0, Weekday::Tue, n, weighted).unwrap()
    }

    #[test]
    fn giant_component_prefers_size_then_min_id() {
        // components {0,1} and {3,4,5}: larger one wins
        let g = graph(6, &[(0, 1), (3, 4), (4, 5)]);
        assert_eq!(giant_component(&g), vec![3, 4, 5]);
        // tie between {1,2} and {3,4}: smaller min id wins
        let g = graph(5, &[(1, 2), (3, 4)]);
        assert_eq!(giant_component(&g), vec![1, 2]);
    }

    #[test]
    fn edgeless_graph_has_singleton_component() {
        let g = graph(4, &[]);
        assert_eq!(giant_component(&g), vec![0]);
        let m = global_metrics(&g);
        assert_eq!(m.giant_component_size, 1);
        assert_eq!(m.diameter, 0);
        assert_eq!(m.modularity, None);
        assert_eq!(m.density, 0.0);
        assert_eq!(m.avg_degree, 0.0);
    }

    #[test]
    fn path_diameter() {
        let g = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let gc = giant_component(&g);
        assert_eq!(diameter(&g, &gc).unwrap(), 4);
        let lb = double_sweep_lower_bound(&g, &gc).unwrap();
        assert_eq!(lb, 4);
    }

    #[test]
    fn cycle_diameter() {
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
        let gc = giant_component(&g);
        assert_eq!(gc.len(), 6);
        assert_eq!(diameter(&g, &gc).unwrap(), 3);
        assert!(double_sweep_lower_bound(&g, &gc).unwrap() <= 3);
    }

    #[test]
    fn disconnected_subset_rejected() {
        let g = graph(4, &[(0, 1), (2, 3)]);
        assert!(matches!(
            diameter(&g, &[0, 1, 2, 3]),
            Err(CoreError::DisconnectedInput)
        ));
    }

    #[test]
    fn density_and_avg_degree_identity() {
        let g = graph(5, &[(0, 1), (1, 2), (2, 3)]);
        let m = global_metrics(&g);
        assert_eq!(m.density, 2.0 * 3.0 / 20.0);
        assert_eq!(m.avg_degree, m.density * 4.0);
        // complete graph has density 1 and average degree n-1
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let mk = global_metrics(&k4);
        assert_eq!(mk.density, 1.0);
        assert_eq!(mk.avg_degree, 3.0);
    }
}
