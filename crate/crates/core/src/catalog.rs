//! Persistent catalog of best-found codes.
//!
//! The on-disk format is JSON lines: one [`CodeRecord`] per line with keys
//! `M, n, b, y, d, d_check, ratio, Q, seed, method, created_at`. Every
//! record is re-verified against the IVP solver when it enters a
//! [`Catalog`]; a record whose distance is off by more than
//! [`VERIFY_TOL`] is rejected.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::bounds::CenterDensityTable;
use crate::codes::CyclicGenerator;
use crate::error::{Error, Result};
use crate::ivp::{solve_ivp, IvpSolution};
use crate::search::SearchResult;

pub const VERIFY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Heuristic,
    Exhaustive,
    Manual,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeRecord {
    #[serde(rename = "M")]
    pub order: u64,
    #[serde(rename = "n")]
    pub dim: usize,
    pub b: Vec<u64>,
    pub y: Vec<f64>,
    pub d: f64,
    pub d_check: f64,
    pub ratio: f64,
    /// Candidate budget; 0 for non-heuristic records.
    #[serde(rename = "Q")]
    pub candidates: usize,
    pub seed: u64,
    pub method: Method,
    pub created_at: DateTime<Utc>,
}

impl CodeRecord {
    pub fn from_search(result: &SearchResult, candidates: usize, seed: u64, method: Method) -> Self {
        Self {
            order: result.order,
            dim: result.dim,
            b: result.best_b.clone(),
            y: result.best_y.clone(),
            d: result.best_d,
            d_check: result.d_check,
            ratio: result.ratio,
            candidates,
            seed,
            method,
            created_at: Utc::now(),
        }
    }

    /// Record for a user-supplied generator.
    pub fn from_solution(g: &CyclicGenerator, solution: &IvpSolution, table: &CenterDensityTable) -> Result<Self> {
        let d_check = table.target_distance(g.order(), g.blocks())?;
        Ok(Self {
            order: g.order(),
            dim: g.dim(),
            b: g.exponents().to_vec(),
            y: solution.y.clone(),
            d: solution.d,
            d_check,
            ratio: solution.d / d_check,
            candidates: 0,
            seed: 0,
            method: Method::Manual,
            created_at: Utc::now(),
        })
    }

    pub fn generator(&self) -> Result<CyclicGenerator> {
        CyclicGenerator::new(self.order, self.dim, self.b.clone())
    }

    /// Re-solves the IVP for `b` and checks the stored distance.
    pub fn verify(&self) -> Result<()> {
        let g = self.generator().map_err(|e| Error::Verification(e.to_string()))?;
        let solution = solve_ivp(&g)?;
        let gap = (solution.d - self.d).abs();
        if !(gap <= VERIFY_TOL) {
            return Err(Error::Verification(format!(
                "M = {}, n = {}, b = {:?}: stored d = {}, recomputed d = {}",
                self.order, self.dim, self.b, self.d, solution.d
            )));
        }
        Ok(())
    }
}

/// Reads every record of a JSON-lines file; blank lines are skipped.
pub fn read_records(path: &Path) -> Result<Vec<CodeRecord>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).map_err(|source| Error::Json { line: i + 1, source })?;
        out.push(record);
    }
    Ok(out)
}

/// Appends one record as a single line, written with one call.
pub fn append_record(path: &Path, record: &CodeRecord) -> Result<()> {
    let mut line = serde_json::to_string(record).map_err(|source| Error::Json { line: 0, source })?;
    line.push('\n');
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    file.write_all(line.as_bytes()).map_err(|e| Error::io(path, e))
}

/// Best verified record per `(M, n)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Catalog {
    best: BTreeMap<(u64, usize), CodeRecord>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads and verifies a catalog file. Any invalid record fails the load.
    pub fn load(path: &Path) -> Result<Self> {
        let mut catalog = Self::new();
        for record in read_records(path)? {
            catalog.insert(record)?;
        }
        Ok(catalog)
    }

    /// Verifies `record` and keeps it if it beats the current entry.
    /// Returns whether it was kept; equal distances keep the earlier record.
    pub fn insert(&mut self, record: CodeRecord) -> Result<bool> {
        record.verify()?;
        let key = (record.order, record.dim);
        match self.best.get(&key) {
            Some(current) if current.d >= record.d => Ok(false),
            _ => {
                self.best.insert(key, record);
                Ok(true)
            }
        }
    }

    pub fn get(&self, order: u64, dim: usize) -> Option<&CodeRecord> {
        self.best.get(&(order, dim))
    }

    /// Records ordered by `(M, n)`.
    pub fn records(&self) -> impl Iterator<Item = &CodeRecord> {
        self.best.values()
    }

    pub fn len(&self) -> usize {
        self.best.len()
    }

    pub fn is_empty(&self) -> bool {
        self.best.is_empty()
    }

    /// Rewrites `path` with the current best records.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut text = String::new();
        for record in self.records() {
            text.push_str(&serde_json::to_string(record).map_err(|source| Error::Json { line: 0, source })?);
            text.push('\n');
        }
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::default_table;

    fn record(m: u64, b: &[u64]) -> CodeRecord {
        let g = CyclicGenerator::new(m, 2 * b.len(), b.to_vec()).unwrap();
        let s = solve_ivp(&g).unwrap();
        CodeRecord::from_solution(&g, &s, default_table()).unwrap()
    }

    #[test]
    fn json_keys() {
        let r = record(20, &[1, 5]);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["M", "Q", "b", "created_at", "d", "d_check", "method", "n", "ratio", "seed", "y"]);
        assert_eq!(v["method"], "manual");
    }

    #[test]
    fn round_trip_and_best_per_key() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let a = record(20, &[1, 5]);
        let b = record(20, &[1, 8]);
        let c = record(10, &[1, 3]);
        for r in [&a, &b, &c] {
            append_record(&path, r).unwrap();
        }
        assert_eq!(read_records(&path).unwrap(), vec![a.clone(), b.clone(), c.clone()]);

        let catalog = Catalog::load(&path).unwrap();
        assert_eq!(catalog.len(), 2);
        assert_eq!(catalog.get(20, 4).unwrap().b, vec![1, 8]);

        let mut catalog = Catalog::new();
        assert!(catalog.insert(a.clone()).unwrap());
        let mut later = a.clone();
        later.seed = 99;
        assert!(!catalog.insert(later).unwrap());
        assert_eq!(catalog.get(20, 4).unwrap().seed, a.seed);

        let saved = dir.path().join("best.jsonl");
        catalog.save(&saved).unwrap();
        assert_eq!(read_records(&saved).unwrap(), vec![a]);
    }

    #[test]
    fn perturbed_record_rejected() {
        let mut r = record(20, &[1, 5]);
        r.d += 2e-5;
        assert!(matches!(Catalog::new().insert(r), Err(Error::Verification(_))));
        let mut r = record(20, &[1, 5]);
        r.b = vec![2, 4];
        assert!(matches!(r.verify(), Err(Error::Verification(_))));
    }

    #[test]
    fn bad_line_reports_position() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        append_record(&path, &record(10, &[1, 3])).unwrap();
        std::fs::OpenOptions::new().append(true).open(&path).unwrap().write_all(b"{oops}\n").unwrap();
        assert!(matches!(read_records(&path), Err(Error::Json { line: 2, .. })));
        assert!(matches!(read_records(&dir.path().join("missing")), Err(Error::Io { .. })));
    }
}
