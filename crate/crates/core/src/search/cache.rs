//! Append-only JSON-lines store of search records.
//!
//! Each line is one [`SearchRecord`] object plus an `engine_version` field.
//! Lookups only match lines written by the same engine version.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{SearchKind, SearchRecord};

pub const ENGINE_VERSION: &str = concat!("apcrucial-", env!("CARGO_PKG_VERSION"));

/// Environment variable overriding the default cache location.
pub const CACHE_ENV: &str = "APCRUCIAL_CACHE";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cache {path}, line {line}: {source}")]
    Malformed {
        path: PathBuf,
        line: usize,
        #[source]
        source: serde_json::Error,
    },
}

#[derive(Serialize, Deserialize)]
struct CacheLine {
    #[serde(flatten)]
    record: SearchRecord,
    engine_version: String,
}

#[derive(Debug)]
pub struct ResultsCache {
    path: PathBuf,
    records: Vec<SearchRecord>,
}

impl ResultsCache {
    /// Loads `path` if it exists; a missing file is an empty cache.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self, CacheError> {
        let path = path.into();
        let mut records = Vec::new();
        let file = match File::open(&path) {
            Ok(f) => Some(f),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        if let Some(file) = file {
            for (idx, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|source| CacheError::Io { path: path.clone(), source })?;
                if line.trim().is_empty() {
                    continue;
                }
                let parsed: CacheLine = serde_json::from_str(&line).map_err(|source| CacheError::Malformed {
                    path: path.clone(),
                    line: idx + 1,
                    source,
                })?;
                if parsed.engine_version == ENGINE_VERSION {
                    records.push(parsed.record);
                }
            }
        }
        Ok(ResultsCache { path, records })
    }

    /// `$APCRUCIAL_CACHE`, else `apcrucial-cache.jsonl` in the working directory.
    pub fn default_path() -> PathBuf {
        std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("apcrucial-cache.jsonl"))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn records(&self) -> &[SearchRecord] {
        &self.records
    }

    /// Latest matching record. A counted record also answers an existence
    /// query; an existence-only record cannot answer a count query.
    pub fn lookup(&self, k: usize, l: usize, n: usize, kind: SearchKind, count: bool) -> Option<SearchRecord> {
        self.records
            .iter()
            .rev()
            .find(|r| r.k == k && r.l == l && r.n == n && r.kind == kind && (!count || r.count.is_some()))
            .cloned()
    }

    pub fn append(&mut self, record: &SearchRecord) -> Result<(), CacheError> {
        let line = serde_json::to_string(&CacheLine {
            record: record.clone(),
            engine_version: ENGINE_VERSION.to_string(),
        })
        .expect("records serialize");
        let io = |source| CacheError::Io { path: self.path.clone(), source };
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path).map_err(io)?;
        writeln!(file, "{line}").map_err(|source| CacheError::Io { path: self.path.clone(), source })?;
        self.records.push(record.clone());
        Ok(())
    }
}
