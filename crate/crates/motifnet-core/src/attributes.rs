//! Edge-weight and geographic-span attributes of sampled motifs: per-quad
//! means over present edges, per-type daily medians, and percent change
//! against weekday baselines.

use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{CoreError, Result};
use crate::graph::{DailyGraph, Weekday, Zone};
use crate::motif::{induced_mask, MotifType, Quad, PAIR_ORDER};

pub const EARTH_RADIUS_KM: f64 = 6371.0088;

/// Great-circle distance between two zone centroids in kilometres.
pub fn pair_distance(a: &Zone, b: &Zone) -> f64 {
    haversine_km(
        a.centroid_lat,
        a.centroid_lon,
        b.centroid_lat,
        b.centroid_lon,
    )
}

pub fn haversine_km(lat1: f64, lon1: f64, lat2: f64, lon2: f64) -> f64 {
    let dlat = (lat2 - lat1).to_radians();
    let dlon = (lon2 - lon1).to_radians();
    let sin_lat = libm::sin(dlat / 2.0);
    let sin_lon = libm::sin(dlon / 2.0);
    let a = sin_lat * sin_lat
        + libm::cos(lat1.to_radians()) * libm::cos(lat2.to_radians()) * sin_lon * sin_lon;
    let a = a.clamp(0.0, 1.0);
    let c = 2.0 * libm::atan2(libm::sqrt(a), libm::sqrt(1.0 - a));
    EARTH_RADIUS_KM * c
}

/// Pairwise centroid distances, precomputed once per zone set.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_zones(zones: &[Zone]) -> DistanceMatrix {
        let n = zones.len();
        let mut d = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let dist = pair_distance(&zones[i], &zones[j]);
                d[i * n + j] = dist;
                d[j * n + i] = dist;
            }
        }
        DistanceMatrix { n, d }
    }

    pub fn get(&self, u: u32, v: u32) -> f64 {
        self.d[u as usize * self.n + v as usize]
    }
}

/// Mean edge weight and mean endpoint distance over the edges present
/// in a quad's induced subgraph. `None` for disconnected quads.
pub fn quad_means(
    graph: &DailyGraph,
    quad: &Quad,
    distances: &DistanceMatrix,
) -> Option<(MotifType, f64, f64)> {
    let mask = induced_mask(graph, quad);
    let ty = crate::motif::classify_bits(mask.bits);
    if ty == MotifType::Disconnected {
        return None;
    }
    let nodes = quad.nodes();
    let mut w_sum = 0.0;
    let mut d_sum = 0.0;
    let mut count = 0u32;
    for (slot, &(i, j)) in PAIR_ORDER.iter().enumerate() {
        if mask.bits >> slot & 1 == 1 {
            w_sum += mask.weights[slot];
            d_sum += distances.get(nodes[i], nodes[j]);
            count += 1;
        }
    }
    let n = count as f64;
    Some((ty, w_sum / n, d_sum / n))
}

/// Split quads by their motif type on this day. Index 0 collects the
/// disconnected ones.
pub fn group_quads_by_type(graph: &DailyGraph, quads: &[Quad]) -> [Vec<Quad>; 7] {
    let mut groups: [Vec<Quad>; 7] = Default::default();
    for quad in quads {
        let ty = crate::motif::classify_bits(crate::motif::mask_bits(graph, quad));
        groups[ty.index()].push(*quad);
    }
    groups
}

/// Median attribute values across one day's quads of one motif type.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeSummary {
    pub day: u32,
    pub weekday: Weekday,
    pub motif_type: MotifType,
    pub median_mean_volume: f64,
    pub median_mean_distance_km: f64,
    pub quad_count: u64,
}

/// Median of a slice; even lengths take the midpoint of the two central
/// order statistics. Empty input returns `None`.
pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_unstable_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        Some(values[n / 2])
    } else {
        Some((values[n / 2 - 1] + values[n / 2]) / 2.0)
    }
}

/// Summary for one (day, type) group; `None` when the group is empty.
pub fn summarize_type(
    graph: &DailyGraph,
    motif_type: MotifType,
    quads: &[Quad],
    distances: &DistanceMatrix,
) -> Option<AttributeSummary> {
    if quads.is_empty() || motif_type == MotifType::Disconnected {
        return None;
    }
    let mut volumes = Vec::with_capacity(quads.len());
    let mut spans = Vec::with_capacity(quads.len());
    for quad in quads {
        let (ty, w, d) = quad_means(graph, quad, distances)?;
        debug_assert_eq!(ty, motif_type);
        volumes.push(w);
        spans.push(d);
    }
    Some(AttributeSummary {
        day: graph.day(),
        weekday: graph.weekday(),
        motif_type,
        median_mean_volume: median(&mut volumes)?,
        median_mean_distance_km: median(&mut spans)?,
        quad_count: quads.len() as u64,
    })
}

/// Summaries for every non-empty connected type group on one day.
pub fn attributes(
    graph: &DailyGraph,
    groups: &[Vec<Quad>; 7],
    distances: &DistanceMatrix,
) -> Vec<AttributeSummary> {
    MotifType::CONNECTED
        .iter()
        .filter_map(|&ty| summarize_type(graph, ty, &groups[ty.index()], distances))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MotifAttribute {
    Volume,
    DistanceKm,
}

impl MotifAttribute {
    pub fn name(&self) -> &'static str {
        match self {
            MotifAttribute::Volume => "volume",
            MotifAttribute::DistanceKm => "distance_km",
        }
    }
}

/// Weekday baseline of each attribute median per motif type.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeBaseline {
    volume: [[Option<f64>; 6]; 7],
    distance: [[Option<f64>; 6]; 7],
}

impl AttributeBaseline {
    pub fn get(&self, weekday: Weekday, ty: MotifType, attr: MotifAttribute) -> Option<f64> {
        let table = match attr {
            MotifAttribute::Volume => &self.volume,
            MotifAttribute::DistanceKm => &self.distance,
        };
        table[weekday.index()][ty.index() - 1]
    }
}

/// Mean of the attribute medians over baseline days, grouped by weekday.
/// `weekdays` maps each day index to its weekday; every weekday must
/// occur inside the window.
pub fn attribute_baseline(
    summaries: &[AttributeSummary],
    weekdays: &[Weekday],
    window: Range<usize>,
) -> Result<AttributeBaseline> {
    if window.start >= window.end || window.end > weekdays.len() {
        return Err(CoreError::InvalidWindow {
            start: window.start,
            end: window.end,
            len: weekdays.len(),
        });
    }
    let mut seen = [false; 7];
    for &wd in &weekdays[window.clone()] {
        seen[wd.index()] = true;
    }
    for (w, hit) in seen.iter().enumerate() {
        if !hit {
            return Err(CoreError::MissingWeekday(Weekday::from_index(w)));
        }
    }
    let mut v_sum = [[0.0f64; 6]; 7];
    let mut d_sum = [[0.0f64; 6]; 7];
    let mut norm = [[0u32; 6]; 7];
    for s in summaries {
        let day = s.day as usize;
        if !window.contains(&day) {
            continue;
        }
        let w = s.weekday.index();
        let i = s.motif_type.index() - 1;
        v_sum[w][i] += s.median_mean_volume;
        d_sum[w][i] += s.median_mean_distance_km;
        norm[w][i] += 1;
    }
    let mut volume = [[None; 6]; 7];
    let mut distance = [[None; 6]; 7];
    for w in 0..7 {
        for i in 0..6 {
            if norm[w][i] > 0 {
                volume[w][i] = Some(v_sum[w][i] / norm[w][i] as f64);
                distance[w][i] = Some(d_sum[w][i] / norm[w][i] as f64);
            }
        }
    }
    Ok(AttributeBaseline { volume, distance })
}

/// Percent change of one (day, type, attribute) median against its
/// weekday baseline. `None` flags a missing or zero baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeChange {
    pub day: u32,
    pub motif_type: MotifType,
    pub attribute: MotifAttribute,
    pub pct_change: Option<f64>,
}

/// Change rows for every summary, two per summary (volume, distance).
pub fn attribute_change(
    summaries: &[AttributeSummary],
    baseline: &AttributeBaseline,
) -> Vec<AttributeChange> {
    let mut out = Vec::with_capacity(summaries.len() * 2);
    for s in summaries {
        for (attr, value) in [
            (MotifAttribute::Volume, s.median_mean_volume),
            (MotifAttribute::DistanceKm, s.median_mean_distance_km),
        ] {
            let base = baseline.get(s.weekday, s.motif_type, attr);
            let pct_change = match base {
                Some(b) if b != 0.0 => Some(100.0 * (value - b) / b),
                _ => None,
            };
            out.push(AttributeChange {
                day: s.day,
                motif_type: s.motif_type,
                attribute: attr,
                pct_change,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DailyGraph;
    use std::vec;

    fn zone(id: u32, lat: f64, lon: f64) -> Zone {
        Zone {
            id,
            centroid_lat: lat,
            centroid_lon: lon,
            label: None,
        }
    }

    #[test]
    fn one_degree_of_longitude_at_equator() {
        let a = zone(0, 0.0, 0.0);
        let b = zone(1, 0.0, 1.0);
        let d = pair_distance(&a, &b);
        assert!((d - 111.195).abs() < 0.01, "got {d}");
        assert_eq!(pair_distance(&a, &a), 0.0);
    }

    #[test]
    fn distance_matrix_is_symmetric() {
        let zones = vec![
            zone(0, 29.7, -95.3),
            zone(1, 29.8, -95.4),
            zone(2, 29.9, -95.2),
        ];
        let m = DistanceMatrix::from_zones(&zones);
        for i in 0..3u32 {
            for j in 0..3u32 {
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
        assert!((m.get(0, 1) - pair_distance(&zones[0], &zones[1])).abs() < 1e-12);
    }

    #[test]
    fn median_order_statistics() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&mut [4.0, 1.0, 3.0, 2.0]), Some(2.5));
        assert_eq!(median(&mut [7.0]), Some(7.0));
        assert_eq!(median(&mut []), None);
    }

    fn path_graph() -> DailyGraph {
        // path 0-1-2-3 with weights 10, 20, 30
        DailyGraph::from_undirected_edges(
            0,
            Weekday::Tue,
            4,
            vec![(0, 1, 10.0), (1, 2, 20.0), (2, 3, 30.0)],
        )
        .unwrap()
    }

    #[test]
    fn quad_means_over_present_edges_only() {
        let g = path_graph();
        let zones = vec![
            zone(0, 0.0, 0.0),
            zone(1, 0.0, 1.0),
            zone(2, 0.0, 2.0),
            zone(3, 0.0, 3.0),
        ];
        let dm = DistanceMatrix::from_zones(&zones);
        let quad = Quad::from_sorted([0, 1, 2, 3]);
        let (ty, w, d) = quad_means(&g, &quad, &dm).unwrap();
        assert_eq!(ty, MotifType::Path);
        assert!((w - 20.0).abs() < 1e-12);
        let expected = (dm.get(0, 1) + dm.get(1, 2) + dm.get(2, 3)) / 3.0;
        assert!((d - expected).abs() < 1e-12);
    }

    #[test]
    fn summaries_skip_empty_groups() {
        let g = path_graph();
        let zones: vec::Vec<Zone> = (0..4).map(|i| zone(i, 0.0, i as f64)).collect();
        let dm = DistanceMatrix::from_zones(&zones);
        let quads = [Quad::from_sorted([0, 1, 2, 3])];
        let groups = group_quads_by_type(&g, &quads);
        let summaries = attributes(&g, &groups, &dm);
        assert_eq!(summaries.len(), 1);
        assert_eq!(summaries[0].motif_type, MotifType::Path);
        assert_eq!(summaries[0].quad_count, 1);
    }

    fn summary(day: u32, wd: Weekday, ty: MotifType, vol: f64, dist: f64) -> AttributeSummary {
        AttributeSummary {
            day,
            weekday: wd,
            motif_type: ty,
            median_mean_volume: vol,
            median_mean_distance_km: dist,
            quad_count: 1,
        }
    }

    #[test]
    fn change_against_weekday_baseline() {
        let weekdays: vec::Vec<Weekday> = (0..14).map(|d| Weekday::Tue.advance(d)).collect();
        let base_rows: vec::Vec<AttributeSummary> = (0..14)
            .map(|d| summary(d, Weekday::Tue.advance(d), MotifType::Path, 100.0, 5.0))
            .collect();
        let baseline = attribute_baseline(&base_rows, &weekdays, 0..14).unwrap();
        let later = [summary(20, Weekday::Mon, MotifType::Path, 150.0, 2.5)];
        let change = attribute_change(&later, &baseline);
        assert_eq!(change.len(), 2);
        assert_eq!(change[0].attribute, MotifAttribute::Volume);
        assert!((change[0].pct_change.unwrap() - 50.0).abs() < 1e-9);
        assert!((change[1].pct_change.unwrap() + 50.0).abs() < 1e-9);
    }

    #[test]
    fn missing_baseline_flags_change_as_undefined() {
        let weekdays: vec::Vec<Weekday> = (0..14).map(|d| Weekday::Tue.advance(d)).collect();
        let base_rows = [summary(0, Weekday::Tue, MotifType::Path, 100.0, 5.0)];
        let baseline = attribute_baseline(&base_rows, &weekdays, 0..14).unwrap();
        let later = [summary(20, Weekday::Mon, MotifType::Path, 150.0, 2.5)];
        let change = attribute_change(&later, &baseline);
        assert_eq!(change[0].pct_change, None);
        assert_eq!(change[1].pct_change, None);
    }

    #[test]
    fn baseline_window_must_cover_every_weekday() {
        let weekdays: vec::Vec<Weekday> = (0..14).map(|d| Weekday::Tue.advance(d)).collect();
        assert!(matches!(
            attribute_baseline(&[], &weekdays, 0..5),
            Err(CoreError::MissingWeekday(_))
        ));
        assert!(matches!(
            attribute_baseline(&[], &weekdays, 0..20),
            Err(CoreError::InvalidWindow { .. })
        ));
    }
}
