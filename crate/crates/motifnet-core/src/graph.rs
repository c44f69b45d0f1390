//! Daily thresholded O-D graphs and the temporal network container.
//!
//! An undirected edge {u, v} exists on a day iff the directional volumes
//! u->v and v->u BOTH strictly exceed the threshold; its weight is the
//! sum of the two directional volumes. Graphs are simple, keep the full
//! fixed node universe (isolated nodes stay in V), and are immutable
//! once built.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{CoreError, Result};

/// Day of week; `TemporalNetwork` derives one per day from the start date.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Weekday {
    Mon = 0,
    Tue = 1,
    Wed = 2,
    Thu = 3,
    Fri = 4,
    Sat = 5,
    Sun = 6,
}

impl Weekday {
    pub const ALL: [Weekday; 7] = [
        Weekday::Mon,
        Weekday::Tue,
        Weekday::Wed,
        Weekday::Thu,
        Weekday::Fri,
        Weekday::Sat,
        Weekday::Sun,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Weekday {
        Weekday::ALL[i % 7]
    }

    /// Weekday reached `offset` days later.
    pub fn advance(self, offset: u32) -> Weekday {
        Weekday::from_index(self.index() + offset as usize)
    }

    pub fn is_weekend(self) -> bool {
        matches!(self, Weekday::Sat | Weekday::Sun)
    }

    pub fn name(self) -> &'static str {
        match self {
            Weekday::Mon => "Mon",
            Weekday::Tue => "Tue",
            Weekday::Wed => "Wed",
            Weekday::Thu => "Thu",
            Weekday::Fri => "Fri",
            Weekday::Sat => "Sat",
            Weekday::Sun => "Sun",
        }
    }
}

impl core::fmt::Display for Weekday {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Plain calendar date carried as metadata; date arithmetic and parsing
/// live in the std companion crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Date {
    pub year: i32,
    pub month: u8,
    pub day: u8,
}

impl core::fmt::Display for Date {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{:04}-{:02}-{:02}", self.year, self.month, self.day)
    }
}

/// Spatial zone: dense id plus centroid coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Zone {
    pub id: u32,
    pub centroid_lat: f64,
    pub centroid_lon: f64,
    pub label: Option<String>,
}

/// Validate a zone table: dense unique ids 0..n-1 and in-range coordinates.
pub fn validate_zones(zones: &[Zone]) -> Result<()> {
    let n = zones.len();
    let mut seen = vec![false; n];
    for z in zones {
        let id = z.id as usize;
        if id >= n {
            return Err(CoreError::InvalidZones {
                reason: alloc::format!("zone id {} outside dense range 0..{}", z.id, n),
            });
        }
        if seen[id] {
            return Err(CoreError::InvalidZones {
                reason: alloc::format!("duplicate zone id {}", z.id),
            });
        }
        seen[id] = true;
        if !(z.centroid_lat.is_finite() && z.centroid_lat.abs() <= 90.0) {
            return Err(CoreError::InvalidZones {
                reason: alloc::format!("zone {} latitude {} out of range", z.id, z.centroid_lat),
            });
        }
        if !(z.centroid_lon.is_finite() && z.centroid_lon.abs() <= 180.0) {
            return Err(CoreError::InvalidZones {
                reason: alloc::format!("zone {} longitude {} out of range", z.id, z.centroid_lon),
            });
        }
    }
    Ok(())
}

/// One directional daily O-D volume observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripRecord {
    pub origin: u32,
    pub destination: u32,
    pub day: u32,
    pub volume: f64,
}

/// Thresholded undirected weighted graph for one day, in CSR form plus a
/// bit-matrix for O(1) adjacency tests (the motif kernel's hot path).
#[derive(Debug, Clone)]
pub struct DailyGraph {
    day: u32,
    weekday: Weekday,
    n: u32,
    offsets: Vec<u32>,
    nbrs: Vec<u32>,
    nbr_weights: Vec<f64>,
    adj_bits: Vec<u64>,
    row_words: usize,
}

impl DailyGraph {
    /// Build a graph directly from an undirected weighted edge list.
    /// Endpoints may come in either order; duplicates are rejected.
    pub fn from_undirected_edges(
        day: u32,
        weekday: Weekday,
        n: u32,
        edges: Vec<(u32, u32, f64)>,
    ) -> Result<DailyGraph> {
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            if u >= n {
                return Err(CoreError::UnknownZone {
                    zone: u,
                    n_zones: n,
                });
            }
            if v >= n {
                return Err(CoreError::UnknownZone {
                    zone: v,
                    n_zones: n,
                });
            }
            if u == v {
                return Err(CoreError::SelfLoop { zone: u, day });
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(CoreError::InvalidVolume {
                    origin: u,
                    destination: v,
                    day,
                    volume: w,
                });
            }
            normalized.push((u.min(v), u.max(v), w));
        }
        normalized.sort_unstable_by_key(|e| (e.0, e.1));
        for pair in normalized.windows(2) {
            if (pair[0].0, pair[0].1) == (pair[1].0, pair[1].1) {
                return Err(CoreError::InvalidZones {
                    reason: alloc::format!(
                        "duplicate edge between zones {} and {}",
                        pair[0].0,
                        pair[0].1
                    ),
                });
            }
        }
        Ok(DailyGraph::from_edges(day, weekday, n, &normalized))
    }

    /// Build from undirected edges `(u, v, weight)` with `u < v`, sorted.
    fn from_edges(day: u32, weekday: Weekday, n: u32, edges: &[(u32, u32, f64)]) -> DailyGraph {
        let nu = n as usize;
        let row_words = nu.div_ceil(64);
        let mut degree = vec![0u32; nu];
        for &(u, v, _) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = vec![0u32; nu + 1];
        for i in 0..nu {
            offsets[i + 1] = offsets[i] + degree[i];
        }
        let mut nbrs = vec![0u32; edges.len() * 2];
        let mut nbr_weights = vec![0.0f64; edges.len() * 2];
        let mut cursor: Vec<u32> = offsets[..nu].to_vec();
        let mut adj_bits = vec![0u64; nu * row_words];
        // edges are sorted by (u, v); inserting v under u in order keeps
        // each neighbor list sorted, and u under v is appended in
        // increasing u as well
        for &(u, v, w) in edges {
            let (ui, vi) = (u as usize, v as usize);
            nbrs[cursor[ui] as usize] = v;
            nbr_weights[cursor[ui] as usize] = w;
            cursor[ui] += 1;
            nbrs[cursor[vi] as usize] = u;
            nbr_weights[cursor[vi] as usize] = w;
            cursor[vi] += 1;
            adj_bits[ui * row_words + vi / 64] |= 1u64 << (vi % 64);
            adj_bits[vi * row_words + ui / 64] |= 1u64 << (ui % 64);
        }
        DailyGraph {
            day,
            weekday,
            n,
            offsets,
            nbrs,
            nbr_weights,
            adj_bits,
            row_words,
        }
    }

    #[inline]
    pub fn day(&self) -> u32 {
        self.day
    }

    #[inline]
    pub fn weekday(&self) -> Weekday {
        self.weekday
    }

    /// Size of the fixed node universe (isolated nodes included).
    #[inline]
    pub fn node_count(&self) -> u32 {
        self.n
    }

    /// Number of undirected edges.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.nbrs.len() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let (ui, vi) = (u as usize, v as usize);
        self.adj_bits[ui * self.row_words + vi / 64] & (1u64 << (vi % 64)) != 0
    }

    /// Weight of edge {u, v}, if present.
    pub fn weight(&self, u: u32, v: u32) -> Option<f64> {
        if !self.has_edge(u, v) {
            return None;
        }
        let (lo, hi) = (
            self.offsets[u as usize] as usize,
            self.offsets[u as usize + 1] as usize,
        );
        let idx = self.nbrs[lo..hi].binary_search(&v).ok()?;
        Some(self.nbr_weights[lo + idx])
    }

    #[inline]
    pub fn degree(&self, u: u32) -> u32 {
        self.offsets[u as usize + 1] - self.offsets[u as usize]
    }

    /// Neighbors of `u` with edge weights, in increasing id order.
    pub fn neighbors(&self, u: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
        let (lo, hi) = (
            self.offsets[u as usize] as usize,
            self.offsets[u as usize + 1] as usize,
        );
        self.nbrs[lo..hi]
            .iter()
            .copied()
            .zip(self.nbr_weights[lo..hi].iter().copied())
    }

    /// All undirected edges `(u, v, w)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| v > u)
                .map(move |(v, w)| (u, v, w))
        })
    }

    /// Total edge weight.
    pub fn total_weight(&self) -> f64 {
        self.edges().map(|(_, _, w)| w).sum()
    }
}

/// Aggregate directional volumes for one day's records, keyed by
/// unordered pair: `(volume min->max, volume max->min)`. Duplicate
/// `(origin, destination)` rows sum. Records are summed in a canonical
/// order so the result does not depend on input order (float addition
/// is not associative).
fn aggregate_day(
    records: &[TripRecord],
    day: u32,
    n: u32,
) -> Result<BTreeMap<(u32, u32), (f64, f64)>> {
    let mut ordered: Vec<&TripRecord> = records.iter().collect();
    ordered.sort_unstable_by_key(|r| (r.origin, r.destination, r.volume.to_bits()));
    let mut volumes: BTreeMap<(u32, u32), (f64, f64)> = BTreeMap::new();
    for r in ordered {
        if r.day != day {
            return Err(CoreError::MixedDays {
                expected: day,
                found: r.day,
            });
        }
        if r.origin >= n {
            return Err(CoreError::UnknownZone {
                zone: r.origin,
                n_zones: n,
            });
        }
        if r.destination >= n {
            return Err(CoreError::UnknownZone {
                zone: r.destination,
                n_zones: n,
            });
        }
        if r.origin == r.destination {
            return Err(CoreError::SelfLoop {
                zone: r.origin,
                day: r.day,
            });
        }
        if !r.volume.is_finite() || r.volume < 0.0 {
            return Err(CoreError::InvalidVolume {
                origin: r.origin,
                destination: r.destination,
                day: r.day,
                volume: r.volume,
            });
        }
        let key = (r.origin.min(r.destination), r.origin.max(r.destination));
        let entry = volumes.entry(key).or_insert((0.0, 0.0));
        if r.origin < r.destination {
            entry.0 += r.volume;
        } else {
            entry.1 += r.volume;
        }
    }
    Ok(volumes)
}

/// Build the thresholded undirected graph for one day.
///
/// Retains {u, v} iff both directional volumes strictly exceed
/// `threshold`; the edge weight is their sum.
pub fn build_daily_graph(
    records: &[TripRecord],
    day: u32,
    weekday: Weekday,
    n_zones: u32,
    threshold: f64,
) -> Result<DailyGraph> {
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(CoreError::InvalidConfig {
            reason: alloc::format!("threshold must be positive, got {threshold}"),
        });
    }
    let volumes = aggregate_day(records, day, n_zones)?;
    let edges: Vec<(u32, u32, f64)> = volumes
        .into_iter()
        .filter(|&(_, (fwd, bwd))| fwd > threshold && bwd > threshold)
        .map(|((u, v), (fwd, bwd))| (u, v, fwd + bwd))
        .collect();
    Ok(DailyGraph::from_edges(day, weekday, n_zones, &edges))
}

/// Ordered sequence of daily graphs over a fixed node universe.
#[derive(Debug, Clone)]
pub struct TemporalNetwork {
    zones: Vec<Zone>,
    days: Vec<DailyGraph>,
    calendar_start: Date,
    start_weekday: Weekday,
}

impl TemporalNetwork {
    #[inline]
    pub fn t_days(&self) -> usize {
        self.days.len()
    }

    #[inline]
    pub fn n_zones(&self) -> u32 {
        self.zones.len() as u32
    }

    pub fn zones(&self) -> &[Zone] {
        &self.zones
    }

    pub fn days(&self) -> &[DailyGraph] {
        &self.days
    }

    pub fn day(&self, t: usize) -> &DailyGraph {
        &self.days[t]
    }

    pub fn calendar_start(&self) -> Date {
        self.calendar_start
    }

    pub fn start_weekday(&self) -> Weekday {
        self.start_weekday
    }

    pub fn weekday_of(&self, day: u32) -> Weekday {
        self.start_weekday.advance(day)
    }

    /// Weekday of every day, in day order.
    pub fn weekdays(&self) -> Vec<Weekday> {
        (0..self.t_days() as u32)
            .map(|t| self.weekday_of(t))
            .collect()
    }
}

/// Build one graph per day 0..t_days-1; days without records become
/// edgeless graphs over the same node universe.
pub fn build_temporal_network(
    zones: Vec<Zone>,
    records: &[TripRecord],
    calendar_start: Date,
    start_weekday: Weekday,
    t_days: u32,
    threshold: f64,
) -> Result<TemporalNetwork> {
    validate_zones(&zones)?;
    let n = zones.len() as u32;
    let mut by_day: Vec<Vec<TripRecord>> = vec![Vec::new(); t_days as usize];
    for r in records {
        if r.day >= t_days {
            return Err(CoreError::DayOutOfRange { day: r.day, t_days });
        }
        by_day[r.day as usize].push(*r);
    }
    let mut days = Vec::with_capacity(t_days as usize);
    for (t, day_records) in by_day.iter().enumerate() {
        let weekday = start_weekday.advance(t as u32);
        days.push(build_daily_graph(
            day_records,
            t as u32,
            weekday,
            n,
            threshold,
        )?);
    }
    Ok(TemporalNetwork {
        zones,
        days,
        calendar_start,
        start_weekday,
    })
}
