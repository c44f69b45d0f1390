//! Exhaustive-partition oracle for the greedy modularity search, on a
//! graph small enough to enumerate every set partition: two 4-cliques
//! joined by a single bridge (Bell(8) = 4140 partitions).

use motifnet_core::community::{modularity_partition, recompute_modularity};
use motifnet_core::graph::{DailyGraph, Weekday};
use motifnet_core::rng::{domain, KeyedRng};
use rand::Rng;

fn two_cliques_with_bridge() -> DailyGraph {
    let mut edges = Vec::new();
    for base in [0u32, 4] {
        for i in 0..4 {
            for j in (i + 1)..4 {
                edges.push((base + i, base + j, 1.0));
            }
        }
    }
    edges.push((3, 4, 1.0));
    DailyGraph::from_undirected_edges(0, Weekday::Mon, 8, edges).unwrap()
}

/// Test-local modularity, written straight from the definition.
fn q_of(graph: &DailyGraph, assignment: &[u32]) -> f64 {
    let m: f64 = graph.edges().map(|(_, _, w)| w).sum();
    let n_comms = assignment.iter().max().unwrap() + 1;
    let mut internal = vec![0.0; n_comms as usize];
    let mut tot = vec![0.0; n_comms as usize];
    for (u, v, w) in graph.edges() {
        let (cu, cv) = (assignment[u as usize], assignment[v as usize]);
        if cu == cv {
            internal[cu as usize] += w;
        }
        tot[cu as usize] += w;
        tot[cv as usize] += w;
    }
    (0..n_comms as usize)
        .map(|c| internal[c] / m - (tot[c] / (2.0 * m)).powi(2))
        .sum()
}

/// Visit every set partition of n elements via restricted growth strings.
fn for_each_partition(n: usize, f: &mut impl FnMut(&[u32])) {
    fn rec(a: &mut Vec<u32>, i: usize, max_used: u32, f: &mut impl FnMut(&[u32])) {
        if i == a.len() {
            f(a);
            return;
        }
        for v in 0..=max_used + 1 {
            a[i] = v;
            rec(a, i + 1, max_used.max(v), f);
        }
    }
    let mut a = vec![0u32; n];
    // element 0 is always in block 0
    rec(&mut a, 1, 0, f);
}

#[test]
fn partition_enumeration_hits_the_bell_number() {
    let mut count = 0u64;
    for_each_partition(8, &mut |_| count += 1);
    assert_eq!(count, 4140);
}

#[test]
fn greedy_search_attains_the_exhaustive_optimum() {
    let g = two_cliques_with_bridge();
    let (assignment, q) = modularity_partition(&g).unwrap();

    let mut best_q = f64::NEG_INFINITY;
    let mut best: Vec<u32> = Vec::new();
    for_each_partition(8, &mut |a| {
        let cand = q_of(&g, a);
        if cand > best_q {
            best_q = cand;
            best = a.to_vec();
        }
    });

    assert!(
        (q - best_q).abs() < 1e-9,
        "greedy q = {q}, exhaustive optimum = {best_q}"
    );
    assert_eq!(assignment, best, "partitions differ");
    assert_eq!(assignment, vec![0, 0, 0, 0, 1, 1, 1, 1]);
    // the library's recompute agrees with the test-local definition
    assert!((recompute_modularity(&g, &assignment) - q_of(&g, &assignment)).abs() < 1e-12);
}

#[test]
fn reported_q_matches_recomputation_on_random_graphs() {
    for seed in 0..15u64 {
        let mut rng = KeyedRng::from_key(seed, &[domain::TEST_GRAPH, 77]);
        let n = 20u32;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random::<f64>() < 0.15 {
                    edges.push((u, v, 0.5 + 2.0 * rng.random::<f64>()));
                }
            }
        }
        let g = DailyGraph::from_undirected_edges(0, Weekday::Mon, n, edges).unwrap();
        let Some((assignment, q)) = modularity_partition(&g) else {
            continue;
        };
        assert!(
            (recompute_modularity(&g, &assignment) - q).abs() < 1e-9,
            "seed {seed}"
        );
        assert!((q_of(&g, &assignment) - q).abs() < 1e-9, "seed {seed}");
        assert!((-0.5..=1.0).contains(&q), "seed {seed}: q = {q}");
        // labels are dense 0..k and ordered by smallest member
        let k = *assignment.iter().max().unwrap() + 1;
        let mut first_node = vec![u32::MAX; k as usize];
        for (node, &c) in assignment.iter().enumerate() {
            first_node[c as usize] = first_node[c as usize].min(node as u32);
        }
        for c in 1..k as usize {
            assert!(first_node[c - 1] < first_node[c], "seed {seed}");
        }
    }
}
