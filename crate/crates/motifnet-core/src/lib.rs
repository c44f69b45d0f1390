//! Core algorithms for temporal mobility-network motif analysis.
//!
//! The crate covers the full analysis chain over daily thresholded
//! origin-destination graphs:
//!
//! - building undirected daily graphs from directional trip volumes
//!   ([`graph`]),
//! - classifying induced four-node subgraphs into motif types ([`motif`]),
//! - uniform quad sampling and daily motif censuses with baselines and
//!   percent-change series ([`sample`], [`census`]),
//! - motif persistence intervals and day-to-day conversion matrices
//!   ([`persistence`]),
//! - per-motif travel-volume and travel-distance attributes
//!   ([`attributes`]),
//! - global network measures: giant component, diameter, modularity,
//!   density, average degree ([`metrics`], [`community`]),
//! - a deterministic gravity-model trip generator for end-to-end runs
//!   without proprietary data ([`synth`]).
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats, and the
//! CLI live in the companion `motifnet` crate. Everything here is
//! deterministic: random streams are counter-based and keyed, so results
//! do not depend on thread count or iteration order.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod attributes;
pub mod census;
pub mod community;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod motif;
pub mod persistence;
pub mod rng;
pub mod sample;
pub mod synth;

pub use error::CoreError;
pub use graph::{DailyGraph, Date, TemporalNetwork, TripRecord, Weekday, Zone};
pub use motif::{MotifType, Quad, QuadEdgeMask};
pub use sample::QuadSample;
