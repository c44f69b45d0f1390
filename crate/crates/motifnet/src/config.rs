//! TOML run configuration: ingest parameters, census and persistence
//! sampling, generator settings, and report toggles.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use motifnet_core::graph::{Date, Weekday};
use motifnet_core::rng::mix;
use motifnet_core::synth::{self, SynthConfig};

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub ingest: IngestConfig,
    pub census: CensusConfig,
    pub persistence: PersistenceConfig,
    pub synth: SynthSection,
    pub report: ReportConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IngestConfig {
    /// Directional volume threshold; both directions must exceed it.
    pub threshold: f64,
    /// ISO-8601 date of day index 0.
    pub calendar_start: String,
    pub t_days: u32,
    pub trips: PathBuf,
    pub zones: PathBuf,
}

impl Default for IngestConfig {
    fn default() -> Self {
        IngestConfig {
            threshold: 50.0,
            calendar_start: "2017-08-01".to_string(),
            t_days: 61,
            trips: PathBuf::from("trips.csv"),
            zones: PathBuf::from("zones.csv"),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CensusConfig {
    pub sample_size: usize,
    pub seed: u64,
    pub baseline_start: usize,
    pub baseline_len: usize,
    pub ma_window: usize,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            sample_size: 100_000,
            seed: 7,
            baseline_start: 0,
            baseline_len: 14,
            ma_window: 7,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PersistenceConfig {
    pub persistence_pool_size: usize,
    pub persistence_seed: u64,
}

impl Default for PersistenceConfig {
    fn default() -> Self {
        PersistenceConfig {
            persistence_pool_size: 1_200_000,
            persistence_seed: 8,
        }
    }
}

/// Generator settings; unset keys fall back to the named preset.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthSection {
    pub preset: Option<String>,
    pub n_zones: Option<u32>,
    pub area_km: Option<f64>,
    pub pop_log_mean: Option<f64>,
    pub pop_log_sigma: Option<f64>,
    pub gravity_beta: Option<f64>,
    pub volume_scale: Option<f64>,
    pub weekend_factor: Option<f64>,
    pub perturb_start: Option<u32>,
    pub perturb_len: Option<u32>,
    pub perturb_severity: Option<f64>,
    pub perturb_distance_bias: Option<f64>,
    pub pre_event_boost: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReportConfig {
    /// Render SVG charts at the end of a full run.
    pub charts: bool,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig { charts: true }
    }
}

impl Config {
    /// Load a config file; relative input paths resolve against the
    /// config file's directory.
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        let mut config: Config = toml::from_str(&text)
            .with_context(|| format!("cannot parse config file {}", path.display()))?;
        if let Some(dir) = path.parent() {
            if config.ingest.trips.is_relative() {
                config.ingest.trips = dir.join(&config.ingest.trips);
            }
            if config.ingest.zones.is_relative() {
                config.ingest.zones = dir.join(&config.ingest.zones);
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ingest.threshold.is_nan() || self.ingest.threshold <= 0.0 {
            bail!("ingest.threshold must be positive");
        }
        if self.ingest.t_days == 0 {
            bail!("ingest.t_days must be positive");
        }
        if self.census.ma_window == 0 {
            bail!("census.ma_window must be at least 1");
        }
        if self.census.baseline_len == 0 {
            bail!("census.baseline_len must be at least 1");
        }
        if self.census.sample_size == 0 {
            bail!("census.sample_size must be at least 1");
        }
        if self.persistence.persistence_pool_size == 0 {
            bail!("persistence.persistence_pool_size must be at least 1");
        }
        let window_end = self.census.baseline_start + self.census.baseline_len;
        if window_end > self.ingest.t_days as usize {
            bail!(
                "baseline window ends on day {window_end} but the horizon is {} days",
                self.ingest.t_days
            );
        }
        self.calendar()?;
        if let Some(name) = &self.synth.preset {
            if synth::bundled_scenario(name).is_none() {
                bail!(
                    "unknown synth preset {name:?}; bundled presets: {}",
                    synth::BUNDLED_SCENARIOS.join(", ")
                );
            }
        }
        Ok(())
    }

    /// Calendar start date and its weekday.
    pub fn calendar(&self) -> Result<(Date, Weekday)> {
        let parsed = chrono::NaiveDate::parse_from_str(&self.ingest.calendar_start, "%Y-%m-%d")
            .with_context(|| {
                format!(
                    "ingest.calendar_start {:?} is not an ISO date",
                    self.ingest.calendar_start
                )
            })?;
        use chrono::Datelike;
        let date = Date {
            year: parsed.year(),
            month: parsed.month() as u8,
            day: parsed.day() as u8,
        };
        let weekday = Weekday::from_index(parsed.weekday().num_days_from_monday() as usize);
        Ok((date, weekday))
    }

    /// Baseline day window shared by census and attribute changes.
    pub fn baseline_window(&self) -> std::ops::Range<usize> {
        self.census.baseline_start..self.census.baseline_start + self.census.baseline_len
    }

    /// Resolve the generator configuration: preset, per-key overrides,
    /// then the calendar and horizon from the ingest section.
    pub fn synth_config(&self) -> Result<SynthConfig> {
        let preset = self.synth.preset.as_deref().unwrap_or("harvey-like");
        let mut sc = synth::bundled_scenario(preset)
            .with_context(|| format!("unknown synth preset {preset:?}"))?;
        let s = &self.synth;
        if let Some(v) = s.n_zones {
            sc.n_zones = v;
        }
        if let Some(v) = s.area_km {
            sc.area_km = v;
        }
        if let Some(v) = s.pop_log_mean {
            sc.pop_log_mean = v;
        }
        if let Some(v) = s.pop_log_sigma {
            sc.pop_log_sigma = v;
        }
        if let Some(v) = s.gravity_beta {
            sc.gravity_beta = v;
        }
        if let Some(v) = s.volume_scale {
            sc.volume_scale = v;
        }
        if let Some(v) = s.weekend_factor {
            sc.weekend_factor = v;
        }
        if let Some(v) = s.perturb_start {
            sc.perturb_start = v;
        }
        if let Some(v) = s.perturb_len {
            sc.perturb_len = v;
        }
        if let Some(v) = s.perturb_severity {
            sc.perturb_severity = v;
        }
        if let Some(v) = s.perturb_distance_bias {
            sc.perturb_distance_bias = v;
        }
        if let Some(v) = s.pre_event_boost {
            sc.pre_event_boost = v;
        }
        if let Some(v) = s.seed {
            sc.seed = v;
        }
        let (date, weekday) = self.calendar()?;
        sc.t_days = self.ingest.t_days;
        sc.calendar_start = date;
        sc.start_weekday = weekday;
        sc.validate()
            .map_err(|e| anyhow::anyhow!("invalid [synth] settings: {e}"))?;
        Ok(sc)
    }

    /// Re-derive every stage seed from one master seed.
    pub fn apply_master_seed(&mut self, seed: u64) {
        self.synth.seed = Some(seed);
        self.census.seed = mix(seed.wrapping_add(1));
        self.persistence.persistence_seed = mix(seed.wrapping_add(2));
    }
}
