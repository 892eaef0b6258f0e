use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

/// Sidecar record written next to a command's primary output.
///
/// Everything except the two timestamps and `build_time_secs` is a pure
/// function of the command line, so reruns differ only in those fields.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    /// Flags as given, plus any seed the run had to draw itself.
    pub args: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub seed_source: Option<String>,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub started_at_unix_ms: u128,
    pub finished_at_unix_ms: u128,
    pub build_time_secs: Option<f64>,
}

pub fn now_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            args: BTreeMap::new(),
            seed: None,
            seed_source: None,
            inputs: Vec::new(),
            outputs: Vec::new(),
            started_at_unix_ms: now_ms(),
            finished_at_unix_ms: 0,
            build_time_secs: None,
        }
    }

    pub fn arg(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.args.insert(key.into(), value.to_string());
        self
    }

    pub fn seed(&mut self, seed: &Seed) -> &mut Self {
        self.seed = Some(seed.value);
        self.seed_source = Some(if seed.drawn { "entropy" } else { "flag" }.into());
        self
    }

    pub fn write(&mut self, primary: &Path) -> Result<PathBuf> {
        self.finished_at_unix_ms = now_ms();
        let path = sidecar(primary);
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(&path, text + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }

    pub fn read(path: &Path) -> Result<RunManifest> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// `<out>.manifest.json`.
pub fn sidecar(primary: &Path) -> PathBuf {
    let mut name = primary.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

pub struct Seed {
    pub value: u64,
    pub drawn: bool,
}

impl Seed {
    pub fn resolve(flag: Option<u64>) -> Seed {
        match flag {
            Some(value) => Seed { value, drawn: false },
            None => Seed { value: rand::random(), drawn: true },
        }
    }
}
