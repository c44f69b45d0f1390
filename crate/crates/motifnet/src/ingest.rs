//! CSV readers and writers for the trip and zone interchange format.
//!
//! Trips: `origin,destination,day,volume`. Zones: `id,lat,lon,label`
//! with an optional label. Self-loop trip rows are dropped and counted;
//! every other malformed row is a hard error naming the line.

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use motifnet_core::graph::{TripRecord, Zone};

const TRIPS_HEADER: [&str; 4] = ["origin", "destination", "day", "volume"];
const ZONES_HEADER: [&str; 4] = ["id", "lat", "lon", "label"];

#[derive(Debug, Deserialize)]
struct TripRow {
    origin: u32,
    destination: u32,
    day: u32,
    volume: f64,
}

#[derive(Debug, Deserialize)]
struct ZoneRow {
    id: u32,
    lat: f64,
    lon: f64,
    label: Option<String>,
}

#[derive(Debug)]
pub struct TripsFile {
    pub records: Vec<TripRecord>,
    pub dropped_self_loops: u64,
}

fn check_header(record: &csv::StringRecord, expected: &[&str], path: &Path) -> Result<()> {
    let found: Vec<&str> = record.iter().collect();
    if found != expected {
        bail!(
            "{}: expected header {:?}, found {:?}",
            path.display(),
            expected.join(","),
            found.join(",")
        );
    }
    Ok(())
}

fn open_reader(path: &Path) -> Result<csv::Reader<std::fs::File>> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))
}

/// Read zones and return them ordered by id, so that position equals id.
pub fn read_zones(path: &Path) -> Result<Vec<Zone>> {
    let mut reader = open_reader(path)?;
    check_header(reader.headers()?, &ZONES_HEADER, path)?;
    let headers = reader.headers()?.clone();
    let mut zones = Vec::new();
    for result in reader.records() {
        let record = result.with_context(|| format!("{}: bad record", path.display()))?;
        let line = record.position().map_or(0, |p| p.line());
        let row: ZoneRow = record
            .deserialize(Some(&headers))
            .with_context(|| format!("{} line {line}: cannot parse zone row", path.display()))?;
        if !(row.lat.is_finite() && row.lat.abs() <= 90.0) {
            bail!(
                "{} line {line}: latitude {} out of range",
                path.display(),
                row.lat
            );
        }
        if !(row.lon.is_finite() && row.lon.abs() <= 180.0) {
            bail!(
                "{} line {line}: longitude {} out of range",
                path.display(),
                row.lon
            );
        }
        zones.push(Zone {
            id: row.id,
            centroid_lat: row.lat,
            centroid_lon: row.lon,
            label: row.label.filter(|s| !s.is_empty()),
        });
    }
    if zones.is_empty() {
        bail!("{}: no zones", path.display());
    }
    zones.sort_by_key(|z| z.id);
    for (i, z) in zones.iter().enumerate() {
        if z.id as usize != i {
            bail!(
                "{}: zone ids must be exactly 0..{} with no gaps or duplicates (problem near id {})",
                path.display(),
                zones.len(),
                z.id
            );
        }
    }
    Ok(zones)
}

/// Read trip records, dropping self-loop rows. Zone and day references
/// are validated against the given universe.
pub fn read_trips(path: &Path, n_zones: u32, t_days: u32) -> Result<TripsFile> {
    let mut reader = open_reader(path)?;
    check_header(reader.headers()?, &TRIPS_HEADER, path)?;
    let headers = reader.headers()?.clone();
    let mut records = Vec::new();
    let mut dropped_self_loops = 0u64;
    for result in reader.records() {
        let record = result.with_context(|| format!("{}: bad record", path.display()))?;
        let line = record.position().map_or(0, |p| p.line());
        let row: TripRow = record
            .deserialize(Some(&headers))
            .with_context(|| format!("{} line {line}: cannot parse trip row", path.display()))?;
        for zone in [row.origin, row.destination] {
            if zone >= n_zones {
                bail!(
                    "{} line {line}: unknown zone {zone} (universe has {n_zones} zones)",
                    path.display()
                );
            }
        }
        if row.day >= t_days {
            bail!(
                "{} line {line}: day {} outside horizon 0..{t_days}",
                path.display(),
                row.day
            );
        }
        if !row.volume.is_finite() || row.volume < 0.0 {
            bail!(
                "{} line {line}: volume {} must be a nonnegative number",
                path.display(),
                row.volume
            );
        }
        if row.origin == row.destination {
            dropped_self_loops += 1;
            continue;
        }
        records.push(TripRecord {
            origin: row.origin,
            destination: row.destination,
            day: row.day,
            volume: row.volume,
        });
    }
    Ok(TripsFile {
        records,
        dropped_self_loops,
    })
}

pub fn write_zones_to<W: Write>(writer: W, zones: &[Zone]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(ZONES_HEADER)?;
    for z in zones {
        w.write_record([
            z.id.to_string(),
            z.centroid_lat.to_string(),
            z.centroid_lon.to_string(),
            z.label.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trips_to<W: Write>(writer: W, records: &[TripRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(TRIPS_HEADER)?;
    for r in records {
        w.write_record([
            r.origin.to_string(),
            r.destination.to_string(),
            r.day.to_string(),
            r.volume.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn temp_csv(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    #[test]
    fn zones_round_trip() {
        let zones = vec![
            Zone {
                id: 0,
                centroid_lat: 29.76,
                centroid_lon: -95.37,
                label: Some("downtown".to_string()),
            },
            Zone {
                id: 1,
                centroid_lat: 29.8123456,
                centroid_lon: -95.4,
                label: None,
            },
        ];
        let mut buf = Vec::new();
        write_zones_to(&mut buf, &zones).unwrap();
        let f = temp_csv(std::str::from_utf8(&buf).unwrap());
        let back = read_zones(f.path()).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].label.as_deref(), Some("downtown"));
        assert_eq!(back[1].label, None);
        assert_eq!(back[1].centroid_lat, 29.8123456);
    }

    #[test]
    fn zones_reordered_by_id() {
        let f = temp_csv("id,lat,lon,label\n1,29.8,-95.4,\n0,29.7,-95.3,\n");
        let zones = read_zones(f.path()).unwrap();
        assert_eq!(zones[0].id, 0);
        assert_eq!(zones[1].id, 1);
    }

    #[test]
    fn zones_gap_rejected() {
        let f = temp_csv("id,lat,lon,label\n0,29.8,-95.4,\n2,29.7,-95.3,\n");
        let err = read_zones(f.path()).unwrap_err();
        assert!(err.to_string().contains("no gaps"));
    }

    #[test]
    fn trips_self_loops_dropped() {
        let f = temp_csv("origin,destination,day,volume\n0,1,0,55\n1,1,0,99\n1,0,0,60\n");
        let trips = read_trips(f.path(), 2, 61).unwrap();
        assert_eq!(trips.records.len(), 2);
        assert_eq!(trips.dropped_self_loops, 1);
    }

    #[test]
    fn trips_unknown_zone_named() {
        let f = temp_csv("origin,destination,day,volume\n0,7,0,55\n");
        let err = read_trips(f.path(), 2, 61).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("unknown zone 7"), "{text}");
        assert!(text.contains("line 2"), "{text}");
    }

    #[test]
    fn trips_bad_volume_line_numbered() {
        let f = temp_csv("origin,destination,day,volume\n0,1,0,55\n1,0,1,-3\n");
        let err = read_trips(f.path(), 2, 61).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("line 3"), "{text}");
    }

    #[test]
    fn wrong_header_rejected() {
        let f = temp_csv("origin,dest,day,volume\n0,1,0,55\n");
        let err = read_trips(f.path(), 2, 61).unwrap_err();
        assert!(err.to_string().contains("expected header"));
    }
}
