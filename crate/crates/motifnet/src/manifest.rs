//! Run manifest: config snapshot, seeds, and digests of every input and
//! output file. Contains no timestamps, so identical runs produce an
//! identical manifest.

use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::Config;
use crate::output::write_atomic;

#[derive(Debug, Clone, Serialize)]
pub struct FileDigest {
    pub name: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Seeds {
    pub synth: Option<u64>,
    pub census: u64,
    pub persistence: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Config,
    pub seeds: Seeds,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

impl RunManifest {
    pub fn new(command: &str, config: Config) -> RunManifest {
        let seeds = Seeds {
            synth: config.synth.seed,
            census: config.census.seed,
            persistence: config.persistence.persistence_seed,
        };
        RunManifest {
            tool: "motifnet",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config,
            seeds,
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    /// Record an input file under the name it was referenced by.
    pub fn add_input(&mut self, name: &str, path: &Path) -> Result<()> {
        self.inputs.push(digest_file(name, path)?);
        Ok(())
    }

    /// Record an output file by its file name inside the run directory.
    pub fn add_output(&mut self, path: &Path) -> Result<()> {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        self.outputs.push(digest_file(&name, path)?);
        Ok(())
    }

    /// Write `manifest.json` into the run directory.
    pub fn write(&mut self, dir: &Path) -> Result<()> {
        self.inputs.sort_by(|a, b| a.name.cmp(&b.name));
        self.outputs.sort_by(|a, b| a.name.cmp(&b.name));
        let path = dir.join("manifest.json");
        write_atomic(&path, |w| {
            serde_json::to_writer_pretty(&mut *w, self)?;
            w.write_all(b"\n")?;
            Ok(())
        })
    }
}

pub fn digest_file(name: &str, path: &Path) -> Result<FileDigest> {
    let mut file = std::fs::File::open(path)
        .with_context(|| format!("cannot open {} for digesting", path.display()))?;
    let mut hasher = Sha256::new();
    let bytes = std::io::copy(&mut file, &mut hasher)
        .with_context(|| format!("cannot read {}", path.display()))?;
    Ok(FileDigest {
        name: name.to_string(),
        sha256: format!("{:x}", hasher.finalize()),
        bytes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_matches_known_vector() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.txt");
        std::fs::write(&path, b"abc").unwrap();
        let d = digest_file("x.txt", &path).unwrap();
        assert_eq!(d.bytes, 3);
        assert_eq!(
            d.sha256,
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn manifest_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let data = dir.path().join("census.csv");
        std::fs::write(&data, b"day\n0\n").unwrap();
        let render = || {
            let mut m = RunManifest::new("run", Config::default());
            m.add_output(&data).unwrap();
            m.write(dir.path()).unwrap();
            std::fs::read(dir.path().join("manifest.json")).unwrap()
        };
        let first = render();
        let second = render();
        assert_eq!(first, second);
        let text = String::from_utf8(first).unwrap();
        assert!(text.contains("\"census.csv\""));
        assert!(!text.to_lowercase().contains("time"));
    }
}
