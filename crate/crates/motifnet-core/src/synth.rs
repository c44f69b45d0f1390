//! Synthetic origin-destination generator: zones scattered over a
//! square region, log-normal populations, and a gravity rate law with
//! weekday factors and an optional disruption window that suppresses
//! travel with a distance-dependent penalty.
//!
//! Every random quantity is drawn from its own keyed counter stream, so
//! any zone, day, or directed pair can be regenerated independently and
//! the full output depends only on the configuration.

use alloc::vec::Vec;
use rand::Rng;
use rand_distr::{Distribution, LogNormal, Poisson};

use crate::attributes::DistanceMatrix;
use crate::error::{CoreError, Result};
use crate::graph::{Date, TripRecord, Weekday, Zone};
use crate::rng::{domain, KeyedRng};

/// Kilometres per degree of latitude (and of longitude at the equator).
pub const KM_PER_DEGREE: f64 = 111.195;

/// Region anchor: the south-west corner of the synthetic square.
pub const ANCHOR_LAT: f64 = 29.76;
pub const ANCHOR_LON: f64 = -95.37;

/// Distances below this floor are clamped before entering the rate law.
const MIN_DISTANCE_KM: f64 = 0.001;

/// Ground-truth parameters of a synthetic scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub n_zones: u32,
    pub t_days: u32,
    /// Side length of the square the zones are scattered over.
    pub area_km: f64,
    pub pop_log_mean: f64,
    pub pop_log_sigma: f64,
    pub gravity_beta: f64,
    pub volume_scale: f64,
    pub weekend_factor: f64,
    /// First day of the disruption window; ignored when the length is 0.
    pub perturb_start: u32,
    pub perturb_len: u32,
    /// Fractional suppression inside the window, 0 to 1.
    pub perturb_severity: f64,
    /// Per-kilometre exponential penalty inside the window.
    pub perturb_distance_bias: f64,
    /// Multiplier applied on the single day before the window opens.
    pub pre_event_boost: f64,
    pub seed: u64,
    pub calendar_start: Date,
    pub start_weekday: Weekday,
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        fn fail(reason: &str) -> Result<()> {
            Err(CoreError::InvalidConfig {
                reason: alloc::string::String::from(reason),
            })
        }
        // Both predicates are false for NaN, so NaN fields fail validation.
        fn positive(x: f64) -> bool {
            x > 0.0
        }
        fn non_negative(x: f64) -> bool {
            x >= 0.0
        }
        if self.n_zones < 4 {
            return fail("n_zones must be at least 4");
        }
        if self.t_days == 0 {
            return fail("t_days must be positive");
        }
        if !positive(self.area_km) {
            return fail("area_km must be positive");
        }
        if !non_negative(self.pop_log_sigma) {
            return fail("pop_log_sigma must be non-negative");
        }
        if !non_negative(self.gravity_beta) {
            return fail("gravity_beta must be non-negative");
        }
        if !non_negative(self.volume_scale) {
            return fail("volume_scale must be non-negative");
        }
        if !non_negative(self.weekend_factor) {
            return fail("weekend_factor must be non-negative");
        }
        if !(0.0..=1.0).contains(&self.perturb_severity) {
            return fail("perturb_severity must lie in [0, 1]");
        }
        if !non_negative(self.perturb_distance_bias) {
            return fail("perturb_distance_bias must be non-negative");
        }
        if !non_negative(self.pre_event_boost) {
            return fail("pre_event_boost must be non-negative");
        }
        if self.perturb_len > 0 && self.perturb_start + self.perturb_len > self.t_days {
            return fail("perturbation window extends past the day horizon");
        }
        Ok(())
    }

    fn in_window(&self, day: u32) -> bool {
        self.perturb_len > 0
            && day >= self.perturb_start
            && day < self.perturb_start + self.perturb_len
    }

    fn is_boost_day(&self, day: u32) -> bool {
        self.perturb_len > 0 && day + 1 == self.perturb_start
    }
}

/// Zone layout derived from a configuration: centroids, populations,
/// and the pairwise distance matrix.
#[derive(Debug, Clone)]
pub struct SynthWorld {
    pub zones: Vec<Zone>,
    pub populations: Vec<f64>,
    pub distances: DistanceMatrix,
}

impl SynthWorld {
    pub fn build(config: &SynthConfig) -> Result<SynthWorld> {
        config.validate()?;
        let lat_rad = ANCHOR_LAT.to_radians();
        let km_per_deg_lon = KM_PER_DEGREE * libm::cos(lat_rad);
        let pop_dist = LogNormal::new(config.pop_log_mean, config.pop_log_sigma).map_err(|_| {
            CoreError::InvalidConfig {
                reason: alloc::string::String::from("population distribution parameters rejected"),
            }
        })?;
        let mut zones = Vec::with_capacity(config.n_zones as usize);
        let mut populations = Vec::with_capacity(config.n_zones as usize);
        for id in 0..config.n_zones {
            let mut place = KeyedRng::from_key(config.seed, &[domain::ZONE_PLACEMENT, id as u64]);
            let x: f64 = place.random::<f64>() * config.area_km;
            let y: f64 = place.random::<f64>() * config.area_km;
            zones.push(Zone {
                id,
                centroid_lat: ANCHOR_LAT + y / KM_PER_DEGREE,
                centroid_lon: ANCHOR_LON + x / km_per_deg_lon,
                label: None,
            });
            let mut pop_rng =
                KeyedRng::from_key(config.seed, &[domain::ZONE_POPULATION, id as u64]);
            populations.push(pop_dist.sample(&mut pop_rng));
        }
        let distances = DistanceMatrix::from_zones(&zones);
        Ok(SynthWorld {
            zones,
            populations,
            distances,
        })
    }
}

/// Deterministic multiplier applied to the base rate of a pair on a
/// given day: weekday factor times disruption or boost factor.
pub fn day_factor(config: &SynthConfig, day: u32, distance_km: f64) -> f64 {
    let weekday = config.start_weekday.advance(day);
    let mut f = if weekday.is_weekend() {
        config.weekend_factor
    } else {
        1.0
    };
    if config.in_window(day) {
        f *= (1.0 - config.perturb_severity)
            * libm::exp(-config.perturb_distance_bias * distance_km);
    } else if config.is_boost_day(day) {
        f *= config.pre_event_boost;
    }
    f
}

/// Expected volume for one directed pair on one day.
pub fn expected_volume(config: &SynthConfig, world: &SynthWorld, u: u32, v: u32, day: u32) -> f64 {
    debug_assert_ne!(u, v);
    let d = world.distances.get(u, v).max(MIN_DISTANCE_KM);
    let base = config.volume_scale * world.populations[u as usize] * world.populations[v as usize]
        / libm::pow(d, config.gravity_beta);
    base * day_factor(config, day, d)
}

/// Trip records for a single day, in (origin, destination) order.
/// Zero-volume draws are omitted.
pub fn generate_day(config: &SynthConfig, world: &SynthWorld, day: u32) -> Vec<TripRecord> {
    let n = config.n_zones;
    let mut records = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let lambda = expected_volume(config, world, u, v, day);
            if lambda <= 0.0 {
                continue;
            }
            let mut rng = KeyedRng::for_trip(config.seed, u, v, day);
            let volume: f64 = Poisson::new(lambda)
                .expect("positive finite rate")
                .sample(&mut rng);
            if volume > 0.0 {
                records.push(TripRecord {
                    origin: u,
                    destination: v,
                    day,
                    volume,
                });
            }
        }
    }
    records
}

/// A fully generated scenario: ground truth plus the emitted records in
/// canonical (day, origin, destination) order.
#[derive(Debug, Clone)]
pub struct SynthScenario {
    pub config: SynthConfig,
    pub zones: Vec<Zone>,
    pub populations: Vec<f64>,
    pub records: Vec<TripRecord>,
}

pub fn generate(config: SynthConfig) -> Result<SynthScenario> {
    let world = SynthWorld::build(&config)?;
    let mut records = Vec::new();
    for day in 0..config.t_days {
        records.extend(generate_day(&config, &world, day));
    }
    Ok(SynthScenario {
        zones: world.zones,
        populations: world.populations,
        config,
        records,
    })
}

/// Scenario shaped like a landfall study: two quiet weeks, a multi-day
/// disruption with a distance penalty, then recovery.
pub fn harvey_like() -> SynthConfig {
    SynthConfig {
        n_zones: 120,
        t_days: 61,
        area_km: 36.0,
        pop_log_mean: 0.0,
        pop_log_sigma: 0.7,
        gravity_beta: 1.0,
        volume_scale: 1500.0,
        weekend_factor: 0.9,
        perturb_start: 24,
        perturb_len: 5,
        perturb_severity: 0.45,
        perturb_distance_bias: 0.1,
        pre_event_boost: 1.2,
        seed: 170801,
        calendar_start: Date {
            year: 2017,
            month: 8,
            day: 1,
        },
        start_weekday: Weekday::Tue,
    }
}

/// A stationary control scenario with no disruption. Volumes sit close to
/// the edge threshold, which keeps all six motif types populated every day.
pub fn steady() -> SynthConfig {
    SynthConfig {
        pop_log_sigma: 0.2,
        gravity_beta: 0.5,
        volume_scale: 210.0,
        perturb_start: 0,
        perturb_len: 0,
        perturb_severity: 0.0,
        perturb_distance_bias: 0.0,
        pre_event_boost: 1.0,
        ..harvey_like()
    }
}

/// A two-week world small enough for exhaustive checks.
pub fn tiny_oracle() -> SynthConfig {
    SynthConfig {
        n_zones: 12,
        t_days: 14,
        area_km: 12.0,
        pop_log_sigma: 0.3,
        gravity_beta: 1.6,
        volume_scale: 800.0,
        weekend_factor: 0.8,
        perturb_start: 0,
        perturb_len: 0,
        perturb_severity: 0.0,
        perturb_distance_bias: 0.0,
        pre_event_boost: 1.0,
        seed: 42,
        ..harvey_like()
    }
}

/// Named bundled scenarios, usable as config presets.
pub fn bundled_scenario(name: &str) -> Option<SynthConfig> {
    match name {
        "harvey-like" => Some(harvey_like()),
        "steady" => Some(steady()),
        "tiny-oracle" => Some(tiny_oracle()),
        _ => None,
    }
}

pub const BUNDLED_SCENARIOS: [&str; 3] = ["harvey-like", "steady", "tiny-oracle"];
