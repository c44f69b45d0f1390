//! Error type shared by the core modules.

use alloc::string::String;
use thiserror::Error;

use crate::graph::Weekday;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    /// A trip record references a zone id outside `0..n_zones`.
    #[error("unknown zone id {zone} (zone table has {n_zones} zones)")]
    UnknownZone { zone: u32, n_zones: u32 },

    /// A trip record with `origin == destination` reached graph
    /// construction; self-loops must be dropped at ingest.
    #[error("self-loop record for zone {zone} on day {day}")]
    SelfLoop { zone: u32, day: u32 },

    /// A record's day index is outside the study window.
    #[error("day index {day} out of range (study has {t_days} days)")]
    DayOutOfRange { day: u32, t_days: u32 },

    /// `build_daily_graph` was handed records from more than one day.
    #[error("mixed day indices in daily graph build: expected {expected}, found {found}")]
    MixedDays { expected: u32, found: u32 },

    /// A volume was negative or not finite.
    #[error("invalid volume {volume} for record {origin}->{destination} on day {day}")]
    InvalidVolume {
        origin: u32,
        destination: u32,
        day: u32,
        volume: f64,
    },

    /// Zone table is not a dense, valid id range with in-range coordinates.
    #[error("invalid zone table: {reason}")]
    InvalidZones { reason: String },

    /// Requested more distinct quads than exist.
    #[error("sample size {requested} exceeds C({n_nodes},4) = {available}")]
    SampleTooLarge {
        requested: u64,
        available: u64,
        n_nodes: u32,
    },

    /// Fewer than 4 nodes: no quads exist at all.
    #[error("need at least 4 nodes to form quads, got {n_nodes}")]
    TooFewNodes { n_nodes: u32 },

    /// Baseline window does not contain the named weekday.
    #[error("baseline window contains no {0} day")]
    MissingWeekday(Weekday),

    /// Baseline window is empty or out of series range.
    #[error("invalid baseline window {start}..{end} for series of length {len}")]
    InvalidWindow {
        start: usize,
        end: usize,
        len: usize,
    },

    /// Diameter was requested for a disconnected node set.
    #[error("diameter requires a connected component")]
    DisconnectedInput,

    /// A generator or analysis parameter is outside its documented range.
    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },
}

pub type Result<T> = core::result::Result<T, CoreError>;
