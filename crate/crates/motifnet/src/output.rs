//! CSV table writers and the atomic output protocol.
//!
//! Every output is first written to `<name>.partial` and renamed into
//! place on success; a failed stage leaves the partial file behind for
//! inspection. Undefined values become empty CSV fields.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use motifnet_core::attributes::{AttributeChange, AttributeSummary};
use motifnet_core::census::DailyCensus;
use motifnet_core::metrics::GlobalMetrics;
use motifnet_core::motif::MotifType;
use motifnet_core::persistence::{ConversionMatrix, DiagramPoint};

/// Path of the in-progress twin for an output file.
pub fn partial_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".partial");
    path.with_file_name(name)
}

/// Write through a `.partial` file, renaming only on success.
pub fn write_atomic<F>(path: &Path, fill: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create output directory {}", dir.display()))?;
    }
    let partial = partial_path(path);
    let file = fs::File::create(&partial)
        .with_context(|| format!("cannot create {}", partial.display()))?;
    let mut writer = std::io::BufWriter::new(file);
    fill(&mut writer).with_context(|| format!("while writing {}", partial.display()))?;
    writer
        .flush()
        .with_context(|| format!("cannot flush {}", partial.display()))?;
    drop(writer);
    fs::rename(&partial, path)
        .with_context(|| format!("cannot move {} into place", partial.display()))?;
    Ok(())
}

/// A float field; non-finite values are treated as undefined.
fn num(v: f64) -> String {
    if v.is_finite() {
        v.to_string()
    } else {
        String::new()
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, num)
}

pub fn write_census<W: Write>(writer: W, censuses: &[DailyCensus]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["day".to_string(), "weekday".to_string()];
    header.extend((0..7).map(|i| format!("count_m{i}")));
    header.extend((1..7).map(|i| format!("d{i}")));
    header.push("share_m0".to_string());
    w.write_record(&header)?;
    for c in censuses {
        let mut row = vec![c.day.to_string(), c.weekday.name().to_string()];
        row.extend(c.counts.iter().map(|n| n.to_string()));
        match c.distribution {
            Some(d) => row.extend(d.iter().map(|v| num(*v))),
            None => row.extend((0..6).map(|_| String::new())),
        }
        row.push(num(c.share_disconnected()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// One row per day and type; `raw` and `smoothed` run in lockstep.
pub fn write_change<W: Write>(
    writer: W,
    raw: &[[Option<f64>; 6]],
    smoothed: &[[Option<f64>; 6]],
) -> Result<()> {
    assert_eq!(raw.len(), smoothed.len());
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["day", "type", "pct_change", "pct_change_ma7"])?;
    for (day, (r, s)) in raw.iter().zip(smoothed).enumerate() {
        for ty in 0..6 {
            w.write_record([
                day.to_string(),
                (ty + 1).to_string(),
                opt(r[ty]),
                opt(s[ty]),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_persistence<W: Write>(writer: W, points: &[DiagramPoint]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "type",
        "birth",
        "death",
        "death_target",
        "censored",
        "multiplicity",
    ])?;
    for p in points {
        w.write_record([
            p.motif_type.index().to_string(),
            p.birth.to_string(),
            p.death.to_string(),
            p.death_target
                .map_or_else(String::new, |t| t.index().to_string()),
            p.death_target.is_none().to_string(),
            p.multiplicity.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_conversions<W: Write>(writer: W, matrices: &[ConversionMatrix]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["day", "from_type", "to_type", "fraction", "support"])?;
    for m in matrices {
        for from in MotifType::ALL {
            for to in MotifType::ALL {
                w.write_record([
                    m.day.to_string(),
                    from.index().to_string(),
                    to.index().to_string(),
                    opt(m.fraction(from, to)),
                    m.support[from.index()].to_string(),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_attributes<W: Write>(writer: W, summaries: &[AttributeSummary]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "day",
        "type",
        "median_mean_volume",
        "median_mean_distance_km",
        "quad_count",
    ])?;
    for s in summaries {
        w.write_record([
            s.day.to_string(),
            s.motif_type.index().to_string(),
            num(s.median_mean_volume),
            num(s.median_mean_distance_km),
            s.quad_count.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_attribute_change<W: Write>(writer: W, changes: &[AttributeChange]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["day", "type", "attribute", "pct_change"])?;
    for c in changes {
        w.write_record([
            c.day.to_string(),
            c.motif_type.index().to_string(),
            c.attribute.name().to_string(),
            opt(c.pct_change),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_global<W: Write>(writer: W, metrics: &[GlobalMetrics]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "day",
        "giant_component",
        "diameter",
        "modularity",
        "density",
        "avg_degree",
    ])?;
    for m in metrics {
        w.write_record([
            m.day.to_string(),
            m.giant_component_size.to_string(),
            m.diameter.to_string(),
            opt(m.modularity),
            num(m.density),
            num(m.avg_degree),
        ])?;
    }
    w.flush()?;
    Ok(())
}
