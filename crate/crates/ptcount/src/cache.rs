//! Plain-text result cache: one `stat,p,q,method,value,timestamp` record per
//! line, values in decimal.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use ptcount_core::BigCount;

use crate::{AppError, CountReport, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheRecord {
    pub stat: String,
    pub p: usize,
    pub q: usize,
    pub method: String,
    pub value: BigCount,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl CacheRecord {
    pub fn from_report(report: &CountReport) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            stat: report.stat.clone(),
            p: report.p,
            q: report.q,
            method: report.method.clone(),
            value: report.value.clone(),
            timestamp,
        }
    }

    pub fn to_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.stat, self.p, self.q, self.method, self.value, self.timestamp
        )
    }

    pub fn parse_line(line: &str, lineno: usize) -> Result<Self> {
        let bad = |reason: &str| AppError::Cache {
            line: lineno,
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = line.trim_end().split(',').collect();
        let [stat, p, q, method, value, timestamp] = fields[..] else {
            return Err(bad("expected 6 comma-separated fields"));
        };
        Ok(Self {
            stat: stat.to_string(),
            p: p.parse().map_err(|_| bad("p is not an integer"))?,
            q: q.parse().map_err(|_| bad("q is not an integer"))?,
            method: method.to_string(),
            value: value.parse().map_err(|_| bad("value is not a decimal integer"))?,
            timestamp: timestamp.parse().map_err(|_| bad("bad timestamp"))?,
        })
    }

    pub fn matches(&self, stat: &str, p: usize, q: usize, method: &str) -> bool {
        self.stat == stat && self.p == p && self.q == q && self.method == method
    }
}

#[derive(Debug, Clone)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// All records; a missing file is an empty cache.
    pub fn load(&self) -> Result<Vec<CacheRecord>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for (k, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            out.push(CacheRecord::parse_line(&line, k + 1)?);
        }
        Ok(out)
    }

    /// Most recent record for the key.
    pub fn lookup(&self, stat: &str, p: usize, q: usize, method: &str) -> Result<Option<CacheRecord>> {
        Ok(self
            .load()?
            .into_iter()
            .rev()
            .find(|r| r.matches(stat, p, q, method)))
    }

    pub fn append(&self, record: &CacheRecord) -> Result<()> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(file, "{}", record.to_line())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_round_trip() {
        let rec = CacheRecord {
            stat: "z".into(),
            p: 2,
            q: 30,
            method: "formula".into(),
            value: "265252859812191058636308480000000".parse().unwrap(),
            timestamp: 1_700_000_000,
        };
        let line = rec.to_line();
        assert_eq!(CacheRecord::parse_line(&line, 1).unwrap(), rec);
    }

    #[test]
    fn rejects_garbage() {
        assert!(CacheRecord::parse_line("z,2,2,oracle", 1).is_err());
        assert!(CacheRecord::parse_line("z,2,2,oracle,-3,0", 1).is_err());
        assert!(CacheRecord::parse_line("z,x,2,oracle,3,0", 1).is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("cache.csv"));
        assert!(cache.load().unwrap().is_empty());
        let mut rec = CacheRecord {
            stat: "ze".into(),
            p: 2,
            q: 2,
            method: "oracle".into(),
            value: BigCount::from(10u32),
            timestamp: 1,
        };
        cache.append(&rec).unwrap();
        rec.method = "formula".into();
        cache.append(&rec).unwrap();
        assert_eq!(cache.load().unwrap().len(), 2);
        let hit = cache.lookup("ze", 2, 2, "oracle").unwrap().unwrap();
        assert_eq!(hit.value, BigCount::from(10u32));
        assert!(cache.lookup("ze", 2, 3, "oracle").unwrap().is_none());
    }
}
