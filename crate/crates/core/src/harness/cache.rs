//! On-disk deck cache.
//!
//! Line-oriented. The first line is the header `topodeck-deck-cache 1 <cert-version>`;
//! every further line is one record of tab-separated fields: graph
//! certificate, card certificates, then a SHA-256 checksum of everything
//! before it on the line.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::canon::{Certificate, CERTIFICATE_VERSION};

const MAGIC: &str = "topodeck-deck-cache";
const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache io: {0}")]
    Io(#[from] io::Error),
    #[error("cache header `{0}` does not match this version")]
    Header(String),
    #[error("cache line {0}: malformed record")]
    Malformed(usize),
    #[error("cache line {0}: checksum mismatch")]
    Checksum(usize),
}

#[derive(Debug)]
pub struct DeckCache {
    path: PathBuf,
    entries: BTreeMap<Certificate, Vec<Certificate>>,
    hits: usize,
}

fn checksum(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

fn header() -> String {
    format!("{MAGIC} {FORMAT_VERSION} {CERTIFICATE_VERSION}")
}

impl DeckCache {
    pub const FILE_NAME: &'static str = "decks.cache";

    /// Loads the cache stored in `dir`; a missing file gives an empty cache.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self, CacheError> {
        let path = dir.as_ref().join(Self::FILE_NAME);
        let mut cache = DeckCache {
            path,
            entries: BTreeMap::new(),
            hits: 0,
        };
        let text = match fs::read_to_string(&cache.path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e.into()),
        };
        let mut lines = text.lines();
        let first = lines.next().unwrap_or("");
        if first != header() {
            return Err(CacheError::Header(first.to_owned()));
        }
        for (i, line) in lines.enumerate() {
            let lineno = i + 2;
            let (body, sum) = line.rsplit_once('\t').ok_or(CacheError::Malformed(lineno))?;
            if checksum(body) != sum {
                return Err(CacheError::Checksum(lineno));
            }
            let mut fields = body.split('\t').map(Certificate::from_raw);
            let graph = fields.next().ok_or(CacheError::Malformed(lineno))?;
            cache.entries.insert(graph, fields.collect());
        }
        Ok(cache)
    }

    /// Loads the cache, discarding a corrupt file. The error that forced the
    /// discard is returned alongside.
    pub fn open_or_regenerate(dir: impl AsRef<Path>) -> (Self, Option<CacheError>) {
        match Self::open(&dir) {
            Ok(c) => (c, None),
            Err(e) => {
                let cache = DeckCache {
                    path: dir.as_ref().join(Self::FILE_NAME),
                    entries: BTreeMap::new(),
                    hits: 0,
                };
                (cache, Some(e))
            }
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Lookups answered from the cache since it was opened.
    pub fn hits(&self) -> usize {
        self.hits
    }

    pub fn get(&mut self, graph: &Certificate) -> Option<Vec<Certificate>> {
        let found = self.entries.get(graph).cloned();
        if found.is_some() {
            self.hits += 1;
        }
        found
    }

    pub fn insert(&mut self, graph: Certificate, cards: Vec<Certificate>) {
        self.entries.insert(graph, cards);
    }

    /// Writes every record, sorted by graph certificate.
    pub fn save(&self) -> Result<(), CacheError> {
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut out = header();
        out.push('\n');
        for (graph, cards) in &self.entries {
            let mut body = graph.as_str().to_owned();
            for c in cards {
                body.push('\t');
                body.push_str(c.as_str());
            }
            let sum = checksum(&body);
            out.push_str(&body);
            out.push('\t');
            out.push_str(&sum);
            out.push('\n');
        }
        let tmp = self.path.with_extension("tmp");
        fs::write(&tmp, out)?;
        fs::rename(&tmp, &self.path)?;
        Ok(())
    }
}
