//! Stage orchestration: input acquisition, the five analysis stages,
//! chart rendering, and the run manifest.
//!
//! Every stage is deterministic for a fixed config and seed regardless
//! of thread count: parallel maps collect in index order and all count
//! merging is integer-exact.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;

use motifnet_core::attributes::{self, AttributeSummary, DistanceMatrix};
use motifnet_core::census::{self, DailyCensus};
use motifnet_core::graph::{build_temporal_network, TemporalNetwork, TripRecord};
use motifnet_core::metrics::{self, GlobalMetrics};
use motifnet_core::persistence::{self, TypeSequences};
use motifnet_core::sample::{self, QuadSample};
use motifnet_core::synth;

use crate::config::Config;
use crate::ingest;
use crate::manifest::RunManifest;
use crate::output::{self, write_atomic};
use crate::report;

/// Failure class mapped onto process exit codes.
#[derive(Debug)]
pub enum RunError {
    /// Bad invocation, config, or input data; exit code 2.
    Usage(anyhow::Error),
    /// A stage failed after inputs were accepted; exit code 1.
    Stage(anyhow::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => 2,
            RunError::Stage(_) => 1,
        }
    }

    pub fn error(&self) -> &anyhow::Error {
        match self {
            RunError::Usage(e) | RunError::Stage(e) => e,
        }
    }
}

pub type RunResult<T> = std::result::Result<T, RunError>;

fn usage<T>(r: Result<T>) -> RunResult<T> {
    r.map_err(RunError::Usage)
}

fn stage<T>(r: Result<T>) -> RunResult<T> {
    r.map_err(RunError::Stage)
}

/// Everything the analysis stages need.
pub struct RunContext {
    pub config: Config,
    pub out_dir: PathBuf,
    pub network: TemporalNetwork,
    pub manifest: RunManifest,
}

/// Generate the synthetic scenario and write its input CSVs into the
/// run directory so the run is reproducible from files alone.
fn generate_inputs(
    config: &Config,
    out_dir: &Path,
    manifest: &mut RunManifest,
) -> RunResult<(Vec<motifnet_core::graph::Zone>, Vec<TripRecord>)> {
    let sc = usage(config.synth_config())?;
    let world = usage(synth::SynthWorld::build(&sc).context("cannot build synthetic world"))?;
    let per_day: Vec<Vec<TripRecord>> = (0..sc.t_days)
        .into_par_iter()
        .map(|day| synth::generate_day(&sc, &world, day))
        .collect();
    let records: Vec<TripRecord> = per_day.into_iter().flatten().collect();

    let zones_path = out_dir.join("zones.csv");
    let trips_path = out_dir.join("trips.csv");
    stage(write_atomic(&zones_path, |w| {
        ingest::write_zones_to(w, &world.zones)
    }))?;
    stage(write_atomic(&trips_path, |w| {
        ingest::write_trips_to(w, &records)
    }))?;
    stage(manifest.add_input("zones.csv", &zones_path))?;
    stage(manifest.add_input("trips.csv", &trips_path))?;
    Ok((world.zones, records))
}

/// Load inputs (from files or the generator) and build the network.
pub fn prepare(
    config: Config,
    out_dir: &Path,
    use_synth: bool,
    command: &str,
) -> RunResult<RunContext> {
    usage(
        std::fs::create_dir_all(out_dir)
            .with_context(|| format!("cannot create output directory {}", out_dir.display())),
    )?;
    let mut manifest = RunManifest::new(command, config.clone());
    let (zones, records) = if use_synth {
        generate_inputs(&config, out_dir, &mut manifest)?
    } else {
        let zones_path = &config.ingest.zones;
        let trips_path = &config.ingest.trips;
        let zones = usage(ingest::read_zones(zones_path))?;
        let trips = usage(ingest::read_trips(
            trips_path,
            zones.len() as u32,
            config.ingest.t_days,
        ))?;
        if trips.dropped_self_loops > 0 {
            eprintln!(
                "note: dropped {} self-loop trip rows from {}",
                trips.dropped_self_loops,
                trips_path.display()
            );
        }
        usage(manifest.add_input("zones.csv", zones_path))?;
        usage(manifest.add_input("trips.csv", trips_path))?;
        (zones, trips.records)
    };
    let (calendar_start, start_weekday) = usage(config.calendar())?;
    let network = usage(
        build_temporal_network(
            zones,
            &records,
            calendar_start,
            start_weekday,
            config.ingest.t_days,
            config.ingest.threshold,
        )
        .context("cannot build the temporal network"),
    )?;
    Ok(RunContext {
        config,
        out_dir: out_dir.to_path_buf(),
        network,
        manifest,
    })
}

/// Draw a quad sample, clamping the requested size to the number of
/// quads the universe actually has.
fn draw_sample(
    network: &TemporalNetwork,
    requested: usize,
    seed: u64,
    role: &str,
) -> Result<QuadSample> {
    let total = sample::quad_count(network.n_zones());
    let mut size = requested;
    if requested as u64 > total {
        eprintln!(
            "note: {role} sample of {requested} clamped to {total}, the total quad count of {} zones",
            network.n_zones()
        );
        size = total as usize;
    }
    Ok(sample::sample_quads(network.n_zones(), size, seed)?)
}

fn census_sample(ctx: &RunContext) -> Result<QuadSample> {
    draw_sample(
        &ctx.network,
        ctx.config.census.sample_size,
        ctx.config.census.seed,
        "census",
    )
}

/// Daily census over a fixed shared sample, in day order.
pub fn run_census(network: &TemporalNetwork, sample: &QuadSample) -> Vec<DailyCensus> {
    network
        .days()
        .par_iter()
        .map(|g| census::census(g, sample))
        .collect()
}

pub fn stage_census(ctx: &mut RunContext) -> RunResult<()> {
    let sample = stage(census_sample(ctx))?;
    let censuses = run_census(&ctx.network, &sample);
    let table = stage(
        census::baseline(&censuses, ctx.config.baseline_window())
            .context("cannot build the census baseline"),
    )?;
    let change = census::percent_change(&censuses, &table);
    let smoothed = change.smoothed(ctx.config.census.ma_window);

    let census_path = ctx.out_dir.join("census.csv");
    stage(write_atomic(&census_path, |w| {
        output::write_census(w, &censuses)
    }))?;
    stage(ctx.manifest.add_output(&census_path))?;

    let change_path = ctx.out_dir.join("change.csv");
    stage(write_atomic(&change_path, |w| {
        output::write_change(w, &change.raw, &smoothed)
    }))?;
    stage(ctx.manifest.add_output(&change_path))?;
    Ok(())
}

/// Track the active subset of a fresh pool across all days.
pub fn run_tracking(network: &TemporalNetwork, pool: &QuadSample) -> TypeSequences {
    let active: Vec<_> = pool
        .quads()
        .par_iter()
        .filter(|q| persistence::is_active(network, q))
        .cloned()
        .collect();
    let t = network.t_days();
    let mut data = vec![0u8; active.len() * t];
    data.par_chunks_mut(t)
        .zip(active.par_iter())
        .for_each(|(row, quad)| persistence::track_quad(network, quad, row));
    TypeSequences::from_parts(active, t, data)
}

pub fn stage_persistence(
    ctx: &mut RunContext,
    with_diagram: bool,
    with_conversions: bool,
) -> RunResult<()> {
    let pool = stage(draw_sample(
        &ctx.network,
        ctx.config.persistence.persistence_pool_size,
        ctx.config.persistence.persistence_seed,
        "persistence",
    ))?;
    let sequences = run_tracking(&ctx.network, &pool);

    if with_diagram {
        let intervals = persistence::intervals_all(&sequences);
        let points = persistence::diagram(&intervals);
        let path = ctx.out_dir.join("persistence.csv");
        stage(write_atomic(&path, |w| {
            output::write_persistence(w, &points)
        }))?;
        stage(ctx.manifest.add_output(&path))?;
    }
    if with_conversions {
        let t = sequences.t_days();
        let matrices: Vec<_> = (0..t.saturating_sub(1))
            .into_par_iter()
            .map(|d| persistence::conversion_matrix(&sequences, d))
            .collect();
        let path = ctx.out_dir.join("conversions.csv");
        stage(write_atomic(&path, |w| {
            output::write_conversions(w, &matrices)
        }))?;
        stage(ctx.manifest.add_output(&path))?;
    }
    Ok(())
}

/// Per-day attribute summaries over the census sample, in day order.
pub fn run_attributes(
    network: &TemporalNetwork,
    sample: &QuadSample,
    distances: &DistanceMatrix,
) -> Vec<AttributeSummary> {
    let per_day: Vec<Vec<AttributeSummary>> = network
        .days()
        .par_iter()
        .map(|g| {
            let groups = attributes::group_quads_by_type(g, sample.quads());
            attributes::attributes(g, &groups, distances)
        })
        .collect();
    per_day.into_iter().flatten().collect()
}

pub fn stage_attributes(ctx: &mut RunContext) -> RunResult<()> {
    let sample = stage(census_sample(ctx))?;
    let distances = DistanceMatrix::from_zones(ctx.network.zones());
    let summaries = run_attributes(&ctx.network, &sample, &distances);
    let weekdays = ctx.network.weekdays();
    let table = stage(
        attributes::attribute_baseline(&summaries, &weekdays, ctx.config.baseline_window())
            .context("cannot build the attribute baseline"),
    )?;
    let changes = attributes::attribute_change(&summaries, &table);

    let attr_path = ctx.out_dir.join("attributes.csv");
    stage(write_atomic(&attr_path, |w| {
        output::write_attributes(w, &summaries)
    }))?;
    stage(ctx.manifest.add_output(&attr_path))?;

    let change_path = ctx.out_dir.join("attribute_change.csv");
    stage(write_atomic(&change_path, |w| {
        output::write_attribute_change(w, &changes)
    }))?;
    stage(ctx.manifest.add_output(&change_path))?;
    Ok(())
}

/// Daily global measures, in day order.
pub fn run_global(network: &TemporalNetwork) -> Vec<GlobalMetrics> {
    network
        .days()
        .par_iter()
        .map(metrics::global_metrics)
        .collect()
}

pub fn stage_global(ctx: &mut RunContext) -> RunResult<()> {
    let metrics = run_global(&ctx.network);
    let path = ctx.out_dir.join("global.csv");
    stage(write_atomic(&path, |w| output::write_global(w, &metrics)))?;
    stage(ctx.manifest.add_output(&path))?;
    Ok(())
}

fn finish(ctx: &mut RunContext) -> RunResult<()> {
    stage(ctx.manifest.write(&ctx.out_dir))?;
    Ok(())
}

/// The full pipeline: every stage, charts, then the manifest.
pub fn cmd_run(config: Config, out_dir: &Path, use_synth: bool) -> RunResult<()> {
    let mut ctx = prepare(config, out_dir, use_synth, "run")?;
    stage_census(&mut ctx)?;
    stage_persistence(&mut ctx, true, true)?;
    stage_attributes(&mut ctx)?;
    stage_global(&mut ctx)?;
    if ctx.config.report.charts {
        let rendered = stage(report::render_all(&ctx.out_dir))?;
        for path in &rendered {
            stage(ctx.manifest.add_output(path))?;
        }
    }
    finish(&mut ctx)
}

/// Generate the synthetic scenario files without analyzing them.
pub fn cmd_synth(config: Config, out_dir: &Path) -> RunResult<()> {
    usage(
        std::fs::create_dir_all(out_dir)
            .with_context(|| format!("cannot create output directory {}", out_dir.display())),
    )?;
    let mut manifest = RunManifest::new("synth", config.clone());
    generate_inputs(&config, out_dir, &mut manifest)?;
    stage(manifest.write(out_dir))?;
    Ok(())
}

/// One analysis stage on its own, plus the manifest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageKind {
    Census,
    Persist,
    Convert,
    Attr,
    Global,
}

impl StageKind {
    pub fn command_name(self) -> &'static str {
        match self {
            StageKind::Census => "census",
            StageKind::Persist => "persist",
            StageKind::Convert => "convert",
            StageKind::Attr => "attr",
            StageKind::Global => "global",
        }
    }
}

pub fn cmd_stage(
    config: Config,
    out_dir: &Path,
    use_synth: bool,
    kind: StageKind,
) -> RunResult<()> {
    let mut ctx = prepare(config, out_dir, use_synth, kind.command_name())?;
    match kind {
        StageKind::Census => stage_census(&mut ctx)?,
        StageKind::Persist => stage_persistence(&mut ctx, true, false)?,
        StageKind::Convert => stage_persistence(&mut ctx, false, true)?,
        StageKind::Attr => stage_attributes(&mut ctx)?,
        StageKind::Global => stage_global(&mut ctx)?,
    }
    finish(&mut ctx)
}

/// Re-render the charts from whatever CSVs the run directory holds.
pub fn cmd_report(out_dir: &Path) -> RunResult<()> {
    if !out_dir.is_dir() {
        return Err(RunError::Usage(anyhow::anyhow!(
            "output directory {} does not exist",
            out_dir.display()
        )));
    }
    stage(report::render_all(out_dir))?;
    Ok(())
}
