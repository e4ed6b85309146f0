//! Content-addressed series cache: one versioned JSON file per entry.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::json::{series_from_json, series_to_json, CoeffCodec, SeriesJson};
use fishburn_core::TruncatedSeries;

pub const CACHE_SCHEMA_VERSION: u32 = 1;
/// Environment variable selecting the cache directory.
pub const CACHE_DIR_ENV: &str = "FISHBURN_CACHE_DIR";

/// What a cached series is an expansion of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheKey {
    pub id: String,
    pub params: Vec<String>,
    pub truncation: u32,
    pub ring: String,
}

impl CacheKey {
    pub fn new<S: CoeffCodec>(id: &str, params: &[String], truncation: u32) -> Self {
        CacheKey {
            id: id.into(),
            params: params.to_vec(),
            truncation,
            ring: S::RING.into(),
        }
    }

    pub fn digest(&self) -> String {
        let text = format!("{}|{}|{}|{}", self.id, self.params.join(","), self.truncation, self.ring);
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema: u32,
    pub id: String,
    pub params: Vec<String>,
    pub truncation: u32,
    pub ring: String,
    pub series: SeriesJson,
}

#[derive(Debug, PartialEq)]
pub enum Lookup<S> {
    Hit(TruncatedSeries<S>),
    Miss,
    /// Present but unusable (other schema version, unreadable); treated as a miss.
    Stale(String),
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache i/o at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cache encoding: {0}")]
    Encode(#[from] serde_json::Error),
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).map(Cache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
        move |source| CacheError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// Writes to a temporary file in the cache directory, then renames.
    pub fn put<S: CoeffCodec>(&self, key: &CacheKey, series: &TruncatedSeries<S>) -> Result<PathBuf, CacheError> {
        std::fs::create_dir_all(&self.dir).map_err(Self::io(&self.dir))?;
        let entry = CacheEntry {
            schema: CACHE_SCHEMA_VERSION,
            id: key.id.clone(),
            params: key.params.clone(),
            truncation: key.truncation,
            ring: key.ring.clone(),
            series: series_to_json(series),
        };
        let path = self.path(key);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(Self::io(&self.dir))?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.flush().map_err(Self::io(&path))?;
        tmp.persist(&path).map_err(|e| CacheError::Io {
            path: path.display().to_string(),
            source: e.error,
        })?;
        Ok(path)
    }

    pub fn get<S: CoeffCodec>(&self, key: &CacheKey) -> Lookup<S> {
        let path = self.path(key);
        let Ok(text) = std::fs::read_to_string(&path) else {
            return Lookup::Miss;
        };
        let entry: CacheEntry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => return Lookup::Stale(format!("{}: unreadable entry ({e})", path.display())),
        };
        if entry.schema != CACHE_SCHEMA_VERSION {
            return Lookup::Stale(format!(
                "{}: schema version {} (current {CACHE_SCHEMA_VERSION})",
                path.display(),
                entry.schema
            ));
        }
        if entry.id != key.id || entry.params != key.params || entry.truncation != key.truncation || entry.ring != key.ring {
            return Lookup::Stale(format!("{}: entry does not match its key", path.display()));
        }
        match series_from_json(&entry.series) {
            Ok(s) => Lookup::Hit(s),
            Err(e) => Lookup::Stale(format!("{}: {e}", path.display())),
        }
    }

    /// Removes every entry file; the directory itself stays.
    pub fn clear(&self) -> Result<usize, CacheError> {
        let mut removed = 0;
        let Ok(entries) = std::fs::read_dir(&self.dir) else {
            return Ok(0);
        };
        for e in entries {
            let p = e.map_err(Self::io(&self.dir))?.path();
            if p.extension().is_some_and(|x| x == "json") {
                std::fs::remove_file(&p).map_err(Self::io(&p))?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}
