//! Chart rendering. Every figure is built purely from the stage CSVs in
//! the run directory, so the report stage can re-run in isolation.
//! A missing CSV skips its chart with a warning instead of failing.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

use crate::output::write_atomic;
use crate::svg::{Figure, Panel, CENSORED_COLOR, TYPE_COLORS, WEEKDAY_COLORS};

#[derive(Debug, Deserialize)]
struct CensusRow {
    day: u32,
    #[allow(dead_code)]
    weekday: String,
    #[allow(dead_code)]
    count_m0: u64,
    #[allow(dead_code)]
    count_m1: u64,
    #[allow(dead_code)]
    count_m2: u64,
    #[allow(dead_code)]
    count_m3: u64,
    #[allow(dead_code)]
    count_m4: u64,
    #[allow(dead_code)]
    count_m5: u64,
    #[allow(dead_code)]
    count_m6: u64,
    d1: Option<f64>,
    d2: Option<f64>,
    d3: Option<f64>,
    d4: Option<f64>,
    d5: Option<f64>,
    d6: Option<f64>,
    #[allow(dead_code)]
    share_m0: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct ChangeRow {
    day: u32,
    #[serde(rename = "type")]
    ty: u8,
    pct_change: Option<f64>,
    pct_change_ma7: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct PersistenceRow {
    #[serde(rename = "type")]
    ty: u8,
    birth: u32,
    death: u32,
    death_target: Option<u8>,
    censored: bool,
    multiplicity: u64,
}

#[derive(Debug, Deserialize)]
struct ConversionRow {
    day: u32,
    from_type: u8,
    to_type: u8,
    fraction: Option<f64>,
    #[allow(dead_code)]
    support: u64,
}

#[derive(Debug, Deserialize)]
struct AttributeRow {
    day: u32,
    #[serde(rename = "type")]
    ty: u8,
    median_mean_volume: f64,
    median_mean_distance_km: f64,
    #[allow(dead_code)]
    quad_count: u64,
}

#[derive(Debug, Deserialize)]
struct AttributeChangeRow {
    day: u32,
    #[serde(rename = "type")]
    ty: u8,
    attribute: String,
    pct_change: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct GlobalRow {
    day: u32,
    giant_component: u32,
    diameter: u32,
    modularity: Option<f64>,
    density: f64,
    avg_degree: f64,
}

fn read_rows<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let mut reader =
        csv::Reader::from_path(path).with_context(|| format!("cannot open {}", path.display()))?;
    let mut rows = Vec::new();
    for row in reader.deserialize() {
        rows.push(row.with_context(|| format!("cannot parse a row of {}", path.display()))?);
    }
    Ok(rows)
}

fn type_name(ty: u8) -> String {
    format!("M{ty}")
}

fn chart_census(rows: &[CensusRow]) -> Figure {
    let mut panel = Panel::new(
        "Motif distribution by day",
        "day",
        "share of connected quads",
    );
    let series = |f: fn(&CensusRow) -> Option<f64>| -> Vec<(f64, Option<f64>)> {
        rows.iter().map(|r| (r.day as f64, f(r))).collect()
    };
    let getters: [fn(&CensusRow) -> Option<f64>; 6] =
        [|r| r.d1, |r| r.d2, |r| r.d3, |r| r.d4, |r| r.d5, |r| r.d6];
    for (i, get) in getters.iter().enumerate() {
        panel.line(&type_name(i as u8 + 1), TYPE_COLORS[i + 1], series(*get));
    }
    panel.with_legend();
    let mut fig = Figure::new("Daily motif distribution", 1);
    fig.panel(panel);
    fig
}

fn chart_change(rows: &[ChangeRow]) -> Figure {
    let mut fig = Figure::new("Motif distribution change against weekday baseline", 3);
    for ty in 1..=6u8 {
        let mut panel = Panel::new(&type_name(ty), "day", "% change");
        let of_type: Vec<&ChangeRow> = rows.iter().filter(|r| r.ty == ty).collect();
        let raw: Vec<(f64, Option<f64>)> = of_type
            .iter()
            .map(|r| (r.day as f64, r.pct_change))
            .collect();
        let ma: Vec<(f64, Option<f64>)> = of_type
            .iter()
            .map(|r| (r.day as f64, r.pct_change_ma7))
            .collect();
        panel.line_styled("", TYPE_COLORS[ty as usize], 1.0, 0.35, raw);
        panel.line_styled("", TYPE_COLORS[ty as usize], 1.8, 1.0, ma);
        panel.h_ref(0.0);
        fig.panel(panel);
    }
    fig
}

fn chart_persistence(rows: &[PersistenceRow]) -> Figure {
    let max_multiplicity = rows
        .iter()
        .map(|r| r.multiplicity)
        .max()
        .unwrap_or(1)
        .max(1);
    let mut fig = Figure::new("Motif persistence: birth vs death", 3);
    for ty in 1..=6u8 {
        let mut panel = Panel::new(&type_name(ty), "birth day", "death day");
        panel.with_diagonal();
        for r in rows.iter().filter(|r| r.ty == ty) {
            let color = if r.censored {
                CENSORED_COLOR
            } else {
                TYPE_COLORS[r.death_target.unwrap_or(0) as usize]
            };
            let scale = (r.multiplicity as f64 / max_multiplicity as f64).sqrt();
            panel.marker(r.birth as f64, r.death as f64, 1.5 + 6.5 * scale, color);
        }
        fig.panel(panel);
    }
    fig
}

/// Weekday of each day, read from census.csv when available. Without
/// it the chart falls back to day-of-cycle groups.
fn weekday_index(name: &str) -> Option<usize> {
    ["Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"]
        .iter()
        .position(|w| *w == name)
}

fn chart_conversions(rows: &[ConversionRow], weekdays: &BTreeMap<u32, String>) -> Figure {
    let mut fig = Figure::new(
        "Self-retention by weekday (fraction staying the same type)",
        3,
    );
    for ty in 1..=6u8 {
        let mut panel = Panel::new(&type_name(ty), "day", "retention");
        let of_type: BTreeMap<u32, Option<f64>> = rows
            .iter()
            .filter(|r| r.from_type == ty && r.to_type == ty)
            .map(|r| (r.day, r.fraction))
            .collect();
        for w in 0..7usize {
            let label = ["Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"][w];
            let points: Vec<(f64, Option<f64>)> = of_type
                .iter()
                .filter(|(day, _)| {
                    let by_name = weekdays
                        .get(day)
                        .and_then(|n| weekday_index(n))
                        .unwrap_or(**day as usize % 7);
                    by_name == w
                })
                .map(|(day, fraction)| (*day as f64, *fraction))
                .collect();
            if points.iter().any(|(_, y)| y.is_some()) {
                panel.line(label, WEEKDAY_COLORS[w], points);
            }
        }
        panel.with_legend();
        fig.panel(panel);
    }
    fig
}

/// Gap-aware per-type series: days where the type has no row become
/// explicit breaks instead of interpolated segments.
fn typed_series<R>(
    rows: &[R],
    ty: u8,
    day_of: impl Fn(&R) -> u32,
    ty_of: impl Fn(&R) -> u8,
    value_of: impl Fn(&R) -> Option<f64>,
) -> Vec<(f64, Option<f64>)> {
    let days: Vec<u32> = {
        let mut d: Vec<u32> = rows.iter().map(&day_of).collect();
        d.sort_unstable();
        d.dedup();
        d
    };
    let by_day: BTreeMap<u32, Option<f64>> = rows
        .iter()
        .filter(|r| ty_of(r) == ty)
        .map(|r| (day_of(r), value_of(r)))
        .collect();
    days.iter()
        .map(|d| (*d as f64, by_day.get(d).copied().flatten()))
        .collect()
}

fn chart_attributes(rows: &[AttributeRow]) -> Figure {
    let mut fig = Figure::new("Median per-quad edge attributes by motif type", 2);
    let mut volume = Panel::new("Median mean edge volume", "day", "trips");
    let mut distance = Panel::new("Median mean edge distance", "day", "km");
    for ty in 1..=6u8 {
        volume.line(
            &type_name(ty),
            TYPE_COLORS[ty as usize],
            typed_series(
                rows,
                ty,
                |r| r.day,
                |r| r.ty,
                |r| Some(r.median_mean_volume),
            ),
        );
        distance.line(
            &type_name(ty),
            TYPE_COLORS[ty as usize],
            typed_series(
                rows,
                ty,
                |r| r.day,
                |r| r.ty,
                |r| Some(r.median_mean_distance_km),
            ),
        );
    }
    volume.with_legend();
    distance.with_legend();
    fig.panel(volume);
    fig.panel(distance);
    fig
}

fn chart_attribute_change(rows: &[AttributeChangeRow]) -> Figure {
    let mut fig = Figure::new("Attribute change against weekday baseline", 2);
    for attr in ["volume", "distance_km"] {
        let title = match attr {
            "volume" => "Volume % change",
            _ => "Distance % change",
        };
        let mut panel = Panel::new(title, "day", "% change");
        let of_attr: Vec<&AttributeChangeRow> =
            rows.iter().filter(|r| r.attribute == attr).collect();
        for ty in 1..=6u8 {
            let points = typed_series(&of_attr, ty, |r| r.day, |r| r.ty, |r| r.pct_change);
            panel.line(&type_name(ty), TYPE_COLORS[ty as usize], points);
        }
        panel.h_ref(0.0);
        panel.with_legend();
        fig.panel(panel);
    }
    fig
}

fn chart_global(rows: &[GlobalRow]) -> Figure {
    let mut fig = Figure::new("Global network measures by day", 3);
    let days: Vec<f64> = rows.iter().map(|r| r.day as f64).collect();
    let series = |values: Vec<Option<f64>>| -> Vec<(f64, Option<f64>)> {
        days.iter().copied().zip(values).collect()
    };
    let mut giant = Panel::new("Giant component size", "day", "nodes");
    giant.line(
        "",
        "#2ca02c",
        series(
            rows.iter()
                .map(|r| Some(r.giant_component as f64))
                .collect(),
        ),
    );
    let mut diameter = Panel::new("Diameter", "day", "hops");
    diameter.line(
        "",
        "#d62728",
        series(rows.iter().map(|r| Some(r.diameter as f64)).collect()),
    );
    let mut modularity = Panel::new("Modularity", "day", "Q");
    modularity.line(
        "",
        "#9467bd",
        series(rows.iter().map(|r| r.modularity).collect()),
    );
    let mut density = Panel::new("Density", "day", "2E / n(n-1)");
    density.line(
        "",
        "#1f77b4",
        series(rows.iter().map(|r| Some(r.density)).collect()),
    );
    let mut avg_degree = Panel::new("Average degree", "day", "2E / n");
    avg_degree.line(
        "",
        "#ff7f0e",
        series(rows.iter().map(|r| Some(r.avg_degree)).collect()),
    );
    fig.panel(giant);
    fig.panel(diameter);
    fig.panel(modularity);
    fig.panel(density);
    fig.panel(avg_degree);
    fig
}

fn write_svg(dir: &Path, name: &str, figure: &Figure) -> Result<PathBuf> {
    let path = dir.join(name);
    write_atomic(&path, |w| {
        w.write_all(figure.render().as_bytes())?;
        Ok(())
    })?;
    Ok(path)
}

/// Render every chart whose CSV exists; returns the files written.
pub fn render_all(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let rendered = |result: Result<PathBuf>, written: &mut Vec<PathBuf>| -> Result<()> {
        written.push(result?);
        Ok(())
    };

    let census_path = dir.join("census.csv");
    let mut weekdays: BTreeMap<u32, String> = BTreeMap::new();
    if census_path.exists() {
        let rows: Vec<CensusRow> = read_rows(&census_path)?;
        weekdays = rows.iter().map(|r| (r.day, r.weekday.clone())).collect();
        rendered(
            write_svg(dir, "census_distribution.svg", &chart_census(&rows)),
            &mut written,
        )?;
    } else {
        eprintln!(
            "warning: {} missing, skipping census_distribution.svg",
            census_path.display()
        );
    }

    let change_path = dir.join("change.csv");
    if change_path.exists() {
        let rows: Vec<ChangeRow> = read_rows(&change_path)?;
        rendered(
            write_svg(dir, "change.svg", &chart_change(&rows)),
            &mut written,
        )?;
    } else {
        eprintln!(
            "warning: {} missing, skipping change.svg",
            change_path.display()
        );
    }

    let persistence_path = dir.join("persistence.csv");
    if persistence_path.exists() {
        let rows: Vec<PersistenceRow> = read_rows(&persistence_path)?;
        rendered(
            write_svg(dir, "persistence.svg", &chart_persistence(&rows)),
            &mut written,
        )?;
    } else {
        eprintln!(
            "warning: {} missing, skipping persistence.svg",
            persistence_path.display()
        );
    }

    let conversions_path = dir.join("conversions.csv");
    if conversions_path.exists() {
        let rows: Vec<ConversionRow> = read_rows(&conversions_path)?;
        rendered(
            write_svg(dir, "conversions.svg", &chart_conversions(&rows, &weekdays)),
            &mut written,
        )?;
    } else {
        eprintln!(
            "warning: {} missing, skipping conversions.svg",
            conversions_path.display()
        );
    }

    let attributes_path = dir.join("attributes.csv");
    if attributes_path.exists() {
        let rows: Vec<AttributeRow> = read_rows(&attributes_path)?;
        rendered(
            write_svg(dir, "attributes.svg", &chart_attributes(&rows)),
            &mut written,
        )?;
    } else {
        eprintln!(
            "warning: {} missing, skipping attributes.svg",
            attributes_path.display()
        );
    }

    let attribute_change_path = dir.join("attribute_change.csv");
    if attribute_change_path.exists() {
        let rows: Vec<AttributeChangeRow> = read_rows(&attribute_change_path)?;
        rendered(
            write_svg(dir, "attribute_change.svg", &chart_attribute_change(&rows)),
            &mut written,
        )?;
    } else {
        eprintln!(
            "warning: {} missing, skipping attribute_change.svg",
            attribute_change_path.display()
        );
    }

    let global_path = dir.join("global.csv");
    if global_path.exists() {
        let rows: Vec<GlobalRow> = read_rows(&global_path)?;
        rendered(
            write_svg(dir, "global.svg", &chart_global(&rows)),
            &mut written,
        )?;
    } else {
        eprintln!(
            "warning: {} missing, skipping global.svg",
            global_path.display()
        );
    }

    Ok(written)
}
