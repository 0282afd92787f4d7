//! On-disk cache of character rows, one JSON file per `(group, label)`
//! named by the SHA-256 of the canonical key. Entries are checked against
//! their key on load and anything unreadable is recomputed, so the directory
//! is safe to delete at any time.

use std::path::{Path, PathBuf};
use std::sync::Mutex;

use crg_core::cyclotomic::Cyclotomic;
use crg_core::geder::{Geder, NIrrepLabel};
use crg_core::perfiso::PreparedTable;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct RowKey {
    kind: String,
    schema_version: u32,
    group: Geder,
    label: NIrrepLabel,
}

#[derive(Serialize, Deserialize)]
struct RowEntry {
    key: RowKey,
    values: Vec<Cyclotomic>,
}

pub struct Cache {
    dir: Option<PathBuf>,
    writes: Mutex<()>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir, writes: Mutex::new(()) }
    }

    fn key(group: &Geder, label: &NIrrepLabel) -> RowKey {
        RowKey {
            kind: "row".into(),
            schema_version: crate::SCHEMA_VERSION,
            group: *group,
            label: label.clone(),
        }
    }

    fn path(dir: &Path, key: &RowKey) -> PathBuf {
        let canonical = serde_json::to_vec(&serde_json::to_value(key).unwrap()).unwrap();
        dir.join("rows").join(format!("{}.json", hex::encode(Sha256::digest(&canonical))))
    }

    fn load(&self, group: &Geder, label: &NIrrepLabel, len: usize) -> Option<Vec<Cyclotomic>> {
        let dir = self.dir.as_ref()?;
        let key = Self::key(group, label);
        let bytes = std::fs::read(Self::path(dir, &key)).ok()?;
        let entry: RowEntry = serde_json::from_slice(&bytes).ok()?;
        let matches = entry.key.group == key.group
            && entry.key.label == key.label
            && entry.key.schema_version == key.schema_version;
        (matches && entry.values.len() == len).then_some(entry.values)
    }

    fn store(&self, group: &Geder, label: &NIrrepLabel, values: &[Cyclotomic]) -> std::io::Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let key = Self::key(group, label);
        let path = Self::path(dir, &key);
        let entry = RowEntry { key, values: values.to_vec() };
        let _guard = self.writes.lock().unwrap();
        std::fs::create_dir_all(path.parent().unwrap())?;
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec(&entry).unwrap())?;
        std::fs::rename(tmp, path)
    }

    /// Seeds `table` with every cached row among `labels`.
    pub fn preload(&self, table: &PreparedTable, labels: &[NIrrepLabel]) {
        let group = table.group();
        for l in labels {
            if let Some(values) = self.load(&group, l, table.classes().len()) {
                table.insert_row(l.clone(), values);
            }
        }
    }

    /// Writes the rows of `labels` that were not loaded from the cache.
    pub fn persist(&self, table: &PreparedTable, labels: &[NIrrepLabel], cached: &[bool]) -> std::io::Result<()> {
        let group = table.group();
        for (l, &hit) in labels.iter().zip(cached) {
            if !hit {
                self.store(&group, l, &table.row(l).values)?;
            }
        }
        Ok(())
    }
}
