//! On-disk cache of report rows, one JSON file per key.
//!
//! Keys hash `(schema version, computation kind, group label)`. A file from
//! another schema version is treated as absent, never migrated.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Off,
    ReadWrite,
    /// Recompute everything and compare against what is stored.
    Check,
}

pub struct Cache {
    dir: PathBuf,
    mode: Mode,
}

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    schema: u32,
    kind: String,
    label: String,
    value: T,
}

fn key(kind: &str, label: &str) -> String {
    let mut h = Sha256::new();
    h.update(format!("{SCHEMA_VERSION}\0{kind}\0{label}"));
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl Cache {
    pub fn new(dir: &Path, mode: Mode) -> Cache {
        Cache {
            dir: dir.to_path_buf(),
            mode,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> Cache {
        Cache {
            dir: self.dir.clone(),
            mode,
        }
    }

    fn path(&self, kind: &str, label: &str) -> PathBuf {
        self.dir.join(format!("{}.json", key(kind, label)))
    }

    pub fn load<T: DeserializeOwned>(&self, kind: &str, label: &str) -> Option<T> {
        if self.mode == Mode::Off {
            return None;
        }
        let text = fs::read_to_string(self.path(kind, label)).ok()?;
        let entry: Entry<T> = serde_json::from_str(&text).ok()?;
        (entry.schema == SCHEMA_VERSION && entry.kind == kind && entry.label == label).then_some(entry.value)
    }

    /// Writes through a temporary file so readers never see a partial entry.
    pub fn store<T: Serialize>(&self, kind: &str, label: &str, value: &T) -> Result<()> {
        if self.mode == Mode::Off {
            return Ok(());
        }
        fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let entry = Entry {
            schema: SCHEMA_VERSION,
            kind: kind.to_string(),
            label: label.to_string(),
            value,
        };
        let path = self.path(kind, label);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_version_isolation() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path(), Mode::ReadWrite);
        assert_eq!(c.load::<u32>("k", "C2"), None);
        c.store("k", "C2", &7u32).unwrap();
        assert_eq!(c.load::<u32>("k", "C2"), Some(7));
        assert_eq!(c.load::<u32>("k", "C3"), None);

        let stale = serde_json::json!({"schema": SCHEMA_VERSION + 1, "kind": "k", "label": "C2", "value": 9});
        fs::write(c.path("k", "C2"), stale.to_string()).unwrap();
        assert_eq!(c.load::<u32>("k", "C2"), None);

        let off = Cache::new(dir.path(), Mode::Off);
        off.store("k", "C5", &1u32).unwrap();
        assert_eq!(c.load::<u32>("k", "C5"), None);
    }
}
