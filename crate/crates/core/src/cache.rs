//! On-disk cache of per-`n` dimension vectors.
//!
//! Entries live at `<dir>/v<SCHEMA_VERSION>/n<n>.json` and carry a SHA-256
//! digest of their payload. Anything that fails to parse, has the wrong
//! version, or fails the digest check is reported as invalid and must be
//! recomputed by the caller.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::strata::Stratification;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub n: u32,
    /// Whether the dims were confirmed by both `dim_loc` routes.
    pub cross_checked: bool,
    pub dims: Vec<u32>,
    pub digest: String,
}

impl CacheEntry {
    pub fn new(s: &Stratification, cross_checked: bool) -> Self {
        let dims = s.dims().to_vec();
        let digest = payload_digest(SCHEMA_VERSION, s.n(), cross_checked, &dims);
        CacheEntry {
            schema_version: SCHEMA_VERSION,
            n: s.n(),
            cross_checked,
            dims,
            digest,
        }
    }

    fn is_intact(&self) -> bool {
        self.schema_version == SCHEMA_VERSION
            && self.digest
                == payload_digest(self.schema_version, self.n, self.cross_checked, &self.dims)
    }

    pub fn stratification(&self) -> Result<Stratification> {
        Stratification::from_dims(self.n, self.dims.clone())
    }
}

fn payload_digest(version: u32, n: u32, cross_checked: bool, dims: &[u32]) -> String {
    let mut h = Sha256::new();
    h.update(version.to_le_bytes());
    h.update(n.to_le_bytes());
    h.update([cross_checked as u8]);
    for d in dims {
        h.update(d.to_le_bytes());
    }
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheLookup {
    Hit(CacheEntry),
    Absent,
    /// Present but unusable; the reason is meant for a warning.
    Invalid(String),
}

#[derive(Debug, Clone)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { root: dir.into() }
    }

    pub fn path_for(&self, n: u32) -> PathBuf {
        self.root
            .join(format!("v{SCHEMA_VERSION}"))
            .join(format!("n{n}.json"))
    }

    pub fn store(&self, s: &Stratification, cross_checked: bool) -> Result<PathBuf> {
        let path = self.path_for(s.n());
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let entry = CacheEntry::new(s, cross_checked);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    pub fn load(&self, n: u32) -> CacheLookup {
        load_path(&self.path_for(n), n)
    }

    /// Loads a usable stratification, logging a warning for invalid entries.
    /// With `need_cross_check`, entries computed by a single route are skipped.
    pub fn load_stratification(&self, n: u32, need_cross_check: bool) -> Option<Stratification> {
        match self.load(n) {
            CacheLookup::Hit(e) if e.cross_checked || !need_cross_check => match e.stratification()
            {
                Ok(s) => Some(s),
                Err(err) => {
                    log::warn!("cache entry for n={n} unusable: {err}; recomputing");
                    None
                }
            },
            CacheLookup::Hit(_) | CacheLookup::Absent => None,
            CacheLookup::Invalid(why) => {
                log::warn!("cache entry for n={n} invalid ({why}); recomputing");
                None
            }
        }
    }
}

fn load_path(path: &Path, n: u32) -> CacheLookup {
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return CacheLookup::Absent,
        Err(e) => return CacheLookup::Invalid(e.to_string()),
    };
    let entry: CacheEntry = match serde_json::from_slice(&bytes) {
        Ok(e) => e,
        Err(e) => return CacheLookup::Invalid(format!("malformed entry: {e}")),
    };
    if entry.n != n {
        return CacheLookup::Invalid(format!("entry is for n={}", entry.n));
    }
    if !entry.is_intact() {
        return CacheLookup::Invalid("digest or schema version mismatch".into());
    }
    CacheLookup::Hit(entry)
}
