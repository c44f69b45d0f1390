//! Std companion to `motifnet-core`: configuration, CSV ingest and
//! output, the staged analysis pipeline, run manifests, and SVG report
//! rendering. The binary in `main.rs` is a thin CLI over this library.

pub mod config;
pub mod ingest;
pub mod manifest;
pub mod output;
pub mod pipeline;
pub mod report;
pub mod svg;

pub use motifnet_core as core;
