//! Append-only record archive: one JSON object per line.
//!
//! Field names are those of [`WebsiteRecord`]. A single process may append
//! while others read; concurrent appenders must coordinate externally.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use phishnet_core::WebsiteRecord;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ArchiveError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: {message}")]
    Corrupt { line: usize, message: String },
}

/// Encodes one record as a single line (no trailing newline).
pub fn encode_record(record: &WebsiteRecord) -> String {
    serde_json::to_string(record).expect("records always serialize")
}

/// Decodes archive text. Blank lines are ignored.
pub fn decode_archive(content: &str) -> Result<Vec<WebsiteRecord>, ArchiveError> {
    content
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| ArchiveError::Corrupt {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ArchiveStore {
    path: PathBuf,
}

impl ArchiveStore {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn io(&self, source: io::Error) -> ArchiveError {
        ArchiveError::Io {
            path: self.path.clone(),
            source,
        }
    }

    /// Appends records, creating the file if needed.
    pub fn append(&self, records: &[WebsiteRecord]) -> Result<(), ArchiveError> {
        let mut buf = String::new();
        for r in records {
            buf.push_str(&encode_record(r));
            buf.push('\n');
        }
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| self.io(e))?;
        f.write_all(buf.as_bytes()).map_err(|e| self.io(e))?;
        f.flush().map_err(|e| self.io(e))
    }

    /// All records in append order. A missing file is an error.
    pub fn read_all(&self) -> Result<Vec<WebsiteRecord>, ArchiveError> {
        let text = fs::read_to_string(&self.path).map_err(|e| self.io(e))?;
        decode_archive(&text)
    }

    pub fn index(&self) -> Result<ArchiveIndex, ArchiveError> {
        Ok(ArchiveIndex::new(self.read_all()?))
    }
}

/// Records with a lookup by exact URL.
#[derive(Debug, Clone, Default)]
pub struct ArchiveIndex {
    records: Vec<WebsiteRecord>,
    by_url: HashMap<String, Vec<usize>>,
}

impl ArchiveIndex {
    pub fn new(records: Vec<WebsiteRecord>) -> Self {
        let mut by_url: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, r) in records.iter().enumerate() {
            by_url.entry(r.url.clone()).or_default().push(i);
        }
        Self { records, by_url }
    }

    pub fn records(&self) -> &[WebsiteRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Every record stored under `url`, oldest append first.
    pub fn get(&self, url: &str) -> Vec<&WebsiteRecord> {
        self.by_url
            .get(url)
            .map(|ix| ix.iter().map(|&i| &self.records[i]).collect())
            .unwrap_or_default()
    }

    /// The most recently appended record for `url`.
    pub fn latest(&self, url: &str) -> Option<&WebsiteRecord> {
        self.by_url.get(url)?.last().map(|&i| &self.records[i])
    }
}
