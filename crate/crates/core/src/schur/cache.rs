use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};

use super::w_pair;
use crate::partitions::Partition;
use crate::qalgebra::{HalfLaurent, QScalar};
use crate::{Error, Result};

const FORMAT: &str = "gvtoric-wcache";
const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
}

#[derive(Serialize, Deserialize)]
struct Record {
    lambda: Partition,
    mu: Partition,
    num: HalfLaurent,
    den: HalfLaurent,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
}

/// Memo table for `W_{λμ}`, optionally backed by an append-only file.
///
/// Keys are the canonical serialisation of `(λ, μ)`. Values are canonical
/// [`QScalar`]s, so a lost update just recomputes the same value.
pub struct WCache {
    enabled: bool,
    map: RwLock<HashMap<String, QScalar>>,
    file: Option<(PathBuf, Mutex<BufWriter<File>>)>,
    hits: AtomicU64,
    misses: AtomicU64,
}

fn key(lambda: &Partition, mu: &Partition) -> String {
    serde_json::to_string(&(lambda, mu)).expect("partitions serialise")
}

impl WCache {
    /// No memoisation at all.
    pub fn disabled() -> Self {
        let mut c = Self::in_memory();
        c.enabled = false;
        c
    }

    pub fn in_memory() -> Self {
        WCache {
            enabled: true,
            map: RwLock::new(HashMap::new()),
            file: None,
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    /// Opens (or creates) a cache file and loads its records.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        let mut map = HashMap::new();
        let fresh = !path.exists() || std::fs::metadata(&path).map_err(io)?.len() == 0;
        let mut keep = None;
        if !fresh {
            let text = std::fs::read_to_string(&path).map_err(io)?;
            if !text.ends_with('\n') {
                keep = Some(text.rfind('\n').map_or(0, |i| i + 1) as u64);
            }
            let mut lines = text.lines();
            let header: Header = lines
                .next()
                .and_then(|l| serde_json::from_str(l).ok())
                .ok_or_else(|| Error::Cache("missing header".into()))?;
            if header.format != FORMAT || header.version != VERSION {
                return Err(Error::Cache(format!(
                    "unsupported cache format {} v{}",
                    header.format, header.version
                )));
            }
            let body: Vec<&str> = lines.collect();
            let n = body.len();
            for (i, line) in body.iter().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let rec: Record = match serde_json::from_str(line) {
                    Ok(r) => r,
                    // a torn final append is dropped
                    Err(_) if i + 1 == n && keep.is_some() => break,
                    Err(e) => return Err(Error::Cache(format!("line {}: {e}", i + 2))),
                };
                let value = QScalar::from_fraction(&rec.num, &rec.den)?;
                if value.numerator() != rec.num || value.denominator() != rec.den {
                    return Err(Error::Cache(format!("line {}: record not reduced", i + 2)));
                }
                let k = key(&rec.lambda, &rec.mu);
                if map.get(&k).is_some_and(|old| *old != value) {
                    return Err(Error::Cache(format!("line {}: conflicting record", i + 2)));
                }
                map.insert(k, value);
            }
        }
        if let Some(len) = keep {
            let f = OpenOptions::new().write(true).open(&path).map_err(io)?;
            f.set_len(len).map_err(io)?;
        }
        let fresh = fresh || keep == Some(0);
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(io)?;
        let mut writer = BufWriter::new(file);
        if fresh {
            let header = Header {
                format: FORMAT.into(),
                version: VERSION,
            };
            writeln!(writer, "{}", serde_json::to_string(&header).unwrap()).map_err(io)?;
        }
        Ok(WCache {
            enabled: true,
            map: RwLock::new(map),
            file: Some((path, Mutex::new(writer))),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        })
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    pub fn path(&self) -> Option<&Path> {
        self.file.as_ref().map(|(p, _)| p.as_path())
    }

    /// `W_{λμ}`, memoised.
    pub fn w_pair(&self, lambda: &Partition, mu: &Partition) -> QScalar {
        if !self.enabled {
            self.misses.fetch_add(1, Ordering::Relaxed);
            return w_pair(lambda, mu);
        }
        let k = key(lambda, mu);
        if let Some(v) = self.map.read().unwrap().get(&k) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return v.clone();
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let value = w_pair(lambda, mu);
        let mut map = self.map.write().unwrap();
        if let std::collections::hash_map::Entry::Vacant(e) = map.entry(k) {
            e.insert(value.clone());
            if let Some((_, w)) = &self.file {
                let rec = Record {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                    num: value.numerator(),
                    den: value.denominator(),
                };
                let line = serde_json::to_string(&rec).expect("record serialises");
                // persistence is best effort; a failed write only costs a recompute
                let _ = writeln!(w.lock().unwrap(), "{line}");
            }
        }
        value
    }

    pub fn flush(&self) -> Result<()> {
        if let Some((path, w)) = &self.file {
            w.lock()
                .unwrap()
                .flush()
                .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.map.read().unwrap().len(),
        }
    }
}

impl Default for WCache {
    fn default() -> Self {
        Self::in_memory()
    }
}

impl Drop for WCache {
    fn drop(&mut self) {
        let _ = self.flush();
    }
}

impl std::fmt::Debug for WCache {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WCache")
            .field("enabled", &self.enabled)
            .field("path", &self.path())
            .field("stats", &self.stats())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_partitions, part};

    #[test]
    fn persistent_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.cache");
        let pairs: Vec<_> = (0..=2)
            .flat_map(|a| {
                enumerate_partitions(a)
                    .into_iter()
                    .flat_map(move |l| enumerate_partitions(2).into_iter().map(move |m| (l.clone(), m)))
            })
            .collect();
        let first: Vec<_> = {
            let c = WCache::open(&path).unwrap();
            pairs.iter().map(|(l, m)| c.w_pair(l, m)).collect()
        };
        let c = WCache::open(&path).unwrap();
        assert_eq!(c.stats().entries, pairs.len());
        let second: Vec<_> = pairs.iter().map(|(l, m)| c.w_pair(l, m)).collect();
        assert_eq!(first, second);
        assert_eq!(c.stats().misses, 0);
        let plain = WCache::disabled();
        let third: Vec<_> = pairs.iter().map(|(l, m)| plain.w_pair(l, m)).collect();
        assert_eq!(first, third);
    }

    #[test]
    fn rejects_foreign_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.cache");
        std::fs::write(&path, "{\"format\":\"other\",\"version\":1}\n").unwrap();
        assert!(matches!(WCache::open(&path), Err(Error::Cache(_))));
    }

    #[test]
    fn torn_tail_is_dropped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.cache");
        {
            let c = WCache::open(&path).unwrap();
            c.w_pair(&part(&[1]), &part(&[1]));
        }
        let mut text = std::fs::read_to_string(&path).unwrap();
        text.push_str("{\"lambda\":[2],\"mu\"");
        std::fs::write(&path, text).unwrap();
        {
            let c = WCache::open(&path).unwrap();
            assert_eq!(c.stats().entries, 1);
            c.w_pair(&part(&[2]), &part(&[1]));
        }
        let c = WCache::open(&path).unwrap();
        assert_eq!(c.stats().entries, 2);
    }
}
