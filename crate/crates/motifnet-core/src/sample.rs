//! Uniform sampling of distinct quads from all C(n, 4) combinations.
//!
//! Quads are addressed by their colexicographic rank, so a sample is a
//! set of distinct integers in `0..C(n,4)` drawn with a keyed stream and
//! unranked back into sorted node tuples. Output order is ascending rank
//! (colex), which makes runs reproducible byte for byte.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use rand::Rng;

use crate::error::{CoreError, Result};
use crate::motif::Quad;
use crate::rng::{domain, KeyedRng};

/// C(n, k) for small k, checked against u64 overflow.
fn choose(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let mut num: u128 = 1;
    for i in 0..k {
        num = num.checked_mul((n - i) as u128)?;
    }
    let denom: u128 = (1..=k).map(|i| i as u128).product();
    u64::try_from(num / denom).ok()
}

/// Number of quads over an `n`-node universe.
pub fn quad_count(n_nodes: u32) -> u64 {
    choose(n_nodes as u64, 4).expect("C(n,4) overflows u64")
}

/// Binomial coefficient tables C(m, k) for m in 0..=n, k in {2, 3, 4}.
struct ChooseTables {
    c2: Vec<u64>,
    c3: Vec<u64>,
    c4: Vec<u64>,
}

impl ChooseTables {
    fn new(n: u32) -> ChooseTables {
        let n = n as usize;
        let mut c2 = Vec::with_capacity(n + 1);
        let mut c3 = Vec::with_capacity(n + 1);
        let mut c4 = Vec::with_capacity(n + 1);
        for m in 0..=n as u64 {
            c2.push(choose(m, 2).expect("C(m,2) overflow"));
            c3.push(choose(m, 3).expect("C(m,3) overflow"));
            c4.push(choose(m, 4).expect("C(m,4) overflow"));
        }
        ChooseTables { c2, c3, c4 }
    }

    /// Largest m with table[m] <= r, and the residual r - table[m].
    fn unrank_digit(table: &[u64], r: u64) -> (u32, u64) {
        let m = table.partition_point(|&c| c <= r) - 1;
        (m as u32, r - table[m])
    }
}

/// Quad at colex rank `rank`: for nodes a<b<c<d the rank is
/// C(d,4) + C(c,3) + C(b,2) + a.
fn unrank_quad(tables: &ChooseTables, rank: u64) -> Quad {
    let (d, r) = ChooseTables::unrank_digit(&tables.c4, rank);
    let (c, r) = ChooseTables::unrank_digit(&tables.c3, r);
    let (b, r) = ChooseTables::unrank_digit(&tables.c2, r);
    let a = r as u32;
    Quad::from_sorted([a, b, c, d])
}

/// Colex rank of a quad; inverse of the unranking above.
pub fn quad_rank(quad: &Quad) -> u64 {
    let [a, b, c, d] = quad.nodes();
    choose(d as u64, 4).unwrap()
        + choose(c as u64, 3).unwrap()
        + choose(b as u64, 2).unwrap()
        + a as u64
}

/// A deterministic uniform sample of distinct quads.
#[derive(Debug, Clone)]
pub struct QuadSample {
    n_nodes: u32,
    seed: u64,
    quads: Vec<Quad>,
}

impl QuadSample {
    pub fn quads(&self) -> &[Quad] {
        &self.quads
    }

    pub fn sample_size(&self) -> usize {
        self.quads.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n_nodes(&self) -> u32 {
        self.n_nodes
    }
}

/// Draw `sample_size` distinct quads uniformly from all C(n_nodes, 4)
/// combinations. Output is sorted by colex rank and depends only on
/// `(n_nodes, sample_size, seed)`.
pub fn sample_quads(n_nodes: u32, sample_size: usize, seed: u64) -> Result<QuadSample> {
    if n_nodes < 4 {
        return Err(CoreError::TooFewNodes { n_nodes });
    }
    let total = quad_count(n_nodes);
    let k = sample_size as u64;
    if k > total {
        return Err(CoreError::SampleTooLarge {
            requested: k,
            available: total,
            n_nodes,
        });
    }
    let mut rng = KeyedRng::from_key(seed, &[domain::QUAD_SAMPLE, n_nodes as u64, k]);
    let mut ranks: Vec<u64>;
    if k.saturating_mul(2) >= total {
        // dense draw: partial Fisher-Yates over all ranks
        ranks = (0..total).collect();
        let total_us = total as usize;
        for i in 0..sample_size {
            let j = i + rng.random_range(0..(total_us - i));
            ranks.swap(i, j);
        }
        ranks.truncate(sample_size);
        ranks.sort_unstable();
    } else {
        // sparse draw: rejection into an ordered set
        let mut set = BTreeSet::new();
        while set.len() < sample_size {
            set.insert(rng.random_range(0..total));
        }
        ranks = set.into_iter().collect();
    }
    let tables = ChooseTables::new(n_nodes);
    let quads = ranks.iter().map(|&r| unrank_quad(&tables, r)).collect();
    Ok(QuadSample {
        n_nodes,
        seed,
        quads,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec;

    #[test]
    fn choose_values() {
        assert_eq!(choose(5, 4), Some(5));
        assert_eq!(choose(30, 4), Some(27405));
        assert_eq!(choose(500, 4), Some(2_573_031_125));
        assert_eq!(choose(3, 4), Some(0));
    }

    #[test]
    fn unrank_rank_roundtrip() {
        let tables = ChooseTables::new(12);
        for rank in 0..quad_count(12) {
            let q = unrank_quad(&tables, rank);
            assert_eq!(quad_rank(&q), rank);
            let [a, b, c, d] = q.nodes();
            assert!(a < b && b < c && c < d && d < 12);
        }
    }

    #[test]
    fn exhaustive_when_sample_equals_total() {
        let s = sample_quads(5, 5, 99).unwrap();
        assert_eq!(s.sample_size(), 5);
        let ranks: vec::Vec<u64> = s.quads().iter().map(quad_rank).collect();
        assert_eq!(ranks, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn deterministic_across_runs() {
        let a = sample_quads(500, 20_000, 7).unwrap();
        let b = sample_quads(500, 20_000, 7).unwrap();
        assert_eq!(a.quads(), b.quads());
        let c = sample_quads(500, 20_000, 8).unwrap();
        assert_ne!(a.quads(), c.quads());
    }

    #[test]
    fn quads_distinct_and_sorted() {
        let s = sample_quads(40, 5_000, 3).unwrap();
        for w in s.quads().windows(2) {
            assert!(quad_rank(&w[0]) < quad_rank(&w[1]));
        }
    }

    #[test]
    fn oversized_sample_rejected() {
        let err = sample_quads(5, 6, 0).unwrap_err();
        assert!(matches!(err, CoreError::SampleTooLarge { .. }));
        assert!(matches!(
            sample_quads(3, 1, 0).unwrap_err(),
            CoreError::TooFewNodes { n_nodes: 3 }
        ));
    }
}
