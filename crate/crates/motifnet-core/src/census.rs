//! Daily motif census over a fixed quad sample, weekday baselines, and
//! percent-change series with trailing moving averages.

use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{CoreError, Result};
use crate::graph::{DailyGraph, TemporalNetwork, Weekday};
use crate::motif::{classify_bits, mask_bits, MotifType, Quad};
use crate::sample::QuadSample;

/// Motif counts for one day. `counts[i]` is occurrences of type i in the
/// sample; `distribution` holds D_1..D_6, the shares among connected
/// types only, and is `None` when no connected motif was seen.
#[derive(Debug, Clone, PartialEq)]
pub struct DailyCensus {
    pub day: u32,
    pub weekday: Weekday,
    pub counts: [u64; 7],
    pub distribution: Option<[f64; 6]>,
}

impl DailyCensus {
    pub fn sample_size(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Share of sampled quads that fell into the disconnected class.
    pub fn share_disconnected(&self) -> f64 {
        let total = self.sample_size();
        if total == 0 {
            return f64::NAN;
        }
        self.counts[0] as f64 / total as f64
    }
}

/// Raw type counts for a slice of quads; chunks can be merged with
/// [`merge_counts`] so callers may split the sample arbitrarily.
pub fn census_counts(graph: &DailyGraph, quads: &[Quad]) -> [u64; 7] {
    let mut counts = [0u64; 7];
    for quad in quads {
        let ty = classify_bits(mask_bits(graph, quad));
        counts[ty.index()] += 1;
    }
    counts
}

pub fn merge_counts(a: [u64; 7], b: [u64; 7]) -> [u64; 7] {
    let mut out = a;
    for i in 0..7 {
        out[i] += b[i];
    }
    out
}

/// Build the census record for one day from raw counts.
pub fn census_from_counts(day: u32, weekday: Weekday, counts: [u64; 7]) -> DailyCensus {
    let connected: u64 = counts[1..].iter().sum();
    let distribution = if connected > 0 {
        let denom = connected as f64;
        let mut d = [0.0; 6];
        for (i, slot) in d.iter_mut().enumerate() {
            *slot = counts[i + 1] as f64 / denom;
        }
        Some(d)
    } else {
        None
    };
    DailyCensus {
        day,
        weekday,
        counts,
        distribution,
    }
}

/// Census of one day's graph over the shared sample.
pub fn census(graph: &DailyGraph, sample: &QuadSample) -> DailyCensus {
    let counts = census_counts(graph, sample.quads());
    census_from_counts(graph.day(), graph.weekday(), counts)
}

/// Census of every day in the network against the same sample.
pub fn census_all(network: &TemporalNetwork, sample: &QuadSample) -> Vec<DailyCensus> {
    network.days().iter().map(|g| census(g, sample)).collect()
}

/// Per-weekday baseline shares. `values[w][i]` is the mean of D_{i+1}
/// over baseline days falling on weekday w, `None` when every such day
/// had an undefined distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineTable {
    values: [[Option<f64>; 6]; 7],
}

impl BaselineTable {
    pub fn get(&self, weekday: Weekday, motif_type: MotifType) -> Option<f64> {
        debug_assert!(motif_type != MotifType::Disconnected);
        self.values[weekday.index()][motif_type.index() - 1]
    }
}

/// Average the distributions of the days in `window`, grouped by
/// weekday. Every weekday must occur in the window at least once.
pub fn baseline(censuses: &[DailyCensus], window: Range<usize>) -> Result<BaselineTable> {
    if window.start >= window.end || window.end > censuses.len() {
        return Err(CoreError::InvalidWindow {
            start: window.start,
            end: window.end,
            len: censuses.len(),
        });
    }
    let mut sums = [[0.0f64; 6]; 7];
    let mut norms = [[0u32; 6]; 7];
    let mut seen = [false; 7];
    for c in &censuses[window] {
        let w = c.weekday.index();
        seen[w] = true;
        if let Some(dist) = c.distribution {
            for i in 0..6 {
                sums[w][i] += dist[i];
                norms[w][i] += 1;
            }
        }
    }
    for (w, hit) in seen.iter().enumerate() {
        if !hit {
            return Err(CoreError::MissingWeekday(Weekday::from_index(w)));
        }
    }
    let mut values = [[None; 6]; 7];
    for w in 0..7 {
        for i in 0..6 {
            if norms[w][i] > 0 {
                values[w][i] = Some(sums[w][i] / norms[w][i] as f64);
            }
        }
    }
    Ok(BaselineTable { values })
}

/// Percent change of each day's shares against the weekday baseline.
/// `raw[t][i]` corresponds to motif type i+1; `None` flags an undefined
/// value (missing share, missing baseline, or zero baseline).
#[derive(Debug, Clone, PartialEq)]
pub struct ChangeSeries {
    pub raw: Vec<[Option<f64>; 6]>,
}

impl ChangeSeries {
    /// Trailing moving average of each type's series; the window is
    /// truncated at the start and undefined days are skipped.
    pub fn smoothed(&self, window: usize) -> Vec<[Option<f64>; 6]> {
        let mut columns: [Vec<Option<f64>>; 6] = Default::default();
        for (i, col) in columns.iter_mut().enumerate() {
            *col = moving_average(self.raw.iter().map(|r| r[i]), window);
        }
        (0..self.raw.len())
            .map(|t| core::array::from_fn(|i| columns[i][t]))
            .collect()
    }
}

/// 100 * (share - baseline) / baseline per day and type.
pub fn percent_change(censuses: &[DailyCensus], baseline: &BaselineTable) -> ChangeSeries {
    let raw = censuses
        .iter()
        .map(|c| {
            let mut row = [None; 6];
            for (i, slot) in row.iter_mut().enumerate() {
                let share = c.distribution.map(|d| d[i]);
                let base = baseline.values[c.weekday.index()][i];
                if let (Some(s), Some(b)) = (share, base) {
                    if b != 0.0 {
                        *slot = Some(100.0 * (s - b) / b);
                    }
                }
            }
            row
        })
        .collect();
    ChangeSeries { raw }
}

/// Trailing moving average with partial windows at the start. Undefined
/// entries are excluded from their windows; a window with no defined
/// entries yields `None`.
pub fn moving_average(
    series: impl IntoIterator<Item = Option<f64>>,
    window: usize,
) -> Vec<Option<f64>> {
    assert!(window >= 1, "window must be at least 1");
    let values: Vec<Option<f64>> = series.into_iter().collect();
    let mut out = Vec::with_capacity(values.len());
    for t in 0..values.len() {
        let lo = (t + 1).saturating_sub(window);
        let mut sum = 0.0;
        let mut n = 0u32;
        for v in values[lo..=t].iter().flatten() {
            sum += v;
            n += 1;
        }
        out.push(if n > 0 { Some(sum / n as f64) } else { None });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DailyGraph;
    use crate::sample::sample_quads;
    use std::vec;

    fn graph(n: u32, edges: &[(u32, u32)]) -> DailyGraph {
        let weighted: vec::Vec<(u32, u32, f64)> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        DailyGraph::from_undirected_edges(0, Weekday::Tue, n, weighted).unwrap()
    }

    #[test]
    fn complete_four_nodes_is_all_type_one() {
        let g = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let s = sample_quads(4, 1, 0).unwrap();
        let c = census(&g, &s);
        assert_eq!(c.counts, [0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(c.distribution, Some([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
        assert_eq!(c.share_disconnected(), 0.0);
    }

    #[test]
    fn edgeless_day_has_undefined_distribution() {
        let g = graph(10, &[]);
        let s = sample_quads(10, 50, 1).unwrap();
        let c = census(&g, &s);
        assert_eq!(c.counts[0], 50);
        assert_eq!(c.distribution, None);
        assert_eq!(c.share_disconnected(), 1.0);
    }

    #[test]
    fn shares_sum_to_one_when_defined() {
        let g = graph(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (0, 2)]);
        let s = sample_quads(8, 70, 2).unwrap();
        let c = census(&g, &s);
        let dist = c.distribution.unwrap();
        let total: f64 = dist.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(c.sample_size(), 70);
    }

    #[test]
    fn counts_merge_like_a_single_pass() {
        let g = graph(8, &[(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)]);
        let s = sample_quads(8, 70, 5).unwrap();
        let whole = census_counts(&g, s.quads());
        let (a, b) = s.quads().split_at(33);
        assert_eq!(
            merge_counts(census_counts(&g, a), census_counts(&g, b)),
            whole
        );
    }

    fn census_row(day: u32, weekday: Weekday, dist: [f64; 6]) -> DailyCensus {
        DailyCensus {
            day,
            weekday,
            counts: [0; 7],
            distribution: Some(dist),
        }
    }

    #[test]
    fn baseline_averages_by_weekday() {
        // 14 days starting Tuesday: each weekday appears exactly twice
        let mut rows = vec::Vec::new();
        for day in 0..14u32 {
            let wd = Weekday::Tue.advance(day);
            let v = if day < 7 { 0.4 } else { 0.6 };
            rows.push(census_row(day, wd, [v, 0.1, 0.1, 0.1, 0.1, 0.1]));
        }
        let table = baseline(&rows, 0..14).unwrap();
        for w in Weekday::ALL {
            let b = table.get(w, MotifType::Complete).unwrap();
            assert!((b - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn baseline_requires_every_weekday() {
        let rows: vec::Vec<DailyCensus> = (0..5u32)
            .map(|d| census_row(d, Weekday::Tue.advance(d), [0.5, 0.1, 0.1, 0.1, 0.1, 0.1]))
            .collect();
        assert!(matches!(
            baseline(&rows, 0..5),
            Err(CoreError::MissingWeekday(_))
        ));
        assert!(matches!(
            baseline(&rows, 0..0),
            Err(CoreError::InvalidWindow { .. })
        ));
        assert!(matches!(
            baseline(&rows, 3..9),
            Err(CoreError::InvalidWindow { .. })
        ));
    }

    #[test]
    fn percent_change_examples() {
        let rows = vec![
            census_row(0, Weekday::Mon, [0.4, 0.1, 0.1, 0.1, 0.2, 0.1]),
            census_row(1, Weekday::Mon, [0.6, 0.1, 0.1, 0.1, 0.2, 0.0]),
        ];
        let mut values = [[None; 6]; 7];
        values[Weekday::Mon.index()] = [
            Some(0.4),
            Some(0.1),
            Some(0.1),
            Some(0.1),
            Some(0.2),
            Some(0.0),
        ];
        let table = BaselineTable { values };
        let change = percent_change(&rows, &table);
        assert_eq!(change.raw[0][0], Some(0.0));
        let up = change.raw[1][0].unwrap();
        assert!((up - 50.0).abs() < 1e-9);
        // zero baseline flags the value rather than dividing
        assert_eq!(change.raw[1][5], None);
    }

    #[test]
    fn moving_average_partial_windows() {
        let series = [1.0, 2.0, 3.0, 4.0].map(Some);
        let ma = moving_average(series, 3);
        assert_eq!(ma, vec![Some(1.0), Some(1.5), Some(2.0), Some(3.0)]);
    }

    #[test]
    fn moving_average_skips_undefined() {
        let series = vec![Some(1.0), None, Some(3.0)];
        let ma = moving_average(series, 3);
        assert_eq!(ma, vec![Some(1.0), Some(1.0), Some(2.0)]);
        let all_gone = moving_average(vec![None, None], 2);
        assert_eq!(all_gone, vec![None, None]);
    }

    #[test]
    fn moving_average_constant_series() {
        let series = vec![Some(2.5); 10];
        for v in moving_average(series, 7) {
            assert_eq!(v, Some(2.5));
        }
    }
}
