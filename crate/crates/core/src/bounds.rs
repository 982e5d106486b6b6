//! Sphere-packing bound for commutative group codes in `R^{2k}` and the two
//! quantities the heuristic derives from it: the target distance `ď` and
//! the candidate norm `W`.
//!
//! Everything is driven by `Λ_k`, the center density of the densest known
//! `k`-dimensional lattice. The built-in table lists, for each `k <= 24`,
//! the best known lattice scaled to minimal norm 4 together with its Gram
//! determinant; the center density follows as `(sqrt(min_norm)/2)^k / sqrt(det)`.
//! A CSV file with header `k,lambda,source` overrides individual entries.

use std::collections::BTreeMap;
use std::env;
use std::f64::consts::{FRAC_PI_2, PI};
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable naming a density override file.
pub const DENSITY_TABLE_ENV: &str = "SFORGE_DENSITY_TABLE";

/// `(k, lattice, Gram determinant at minimal norm 4)`.
const BEST_KNOWN_LATTICES: [(usize, &str, f64); 24] = [
    (1, "Z", 4.0),
    (2, "A2", 12.0),
    (3, "A3", 32.0),
    (4, "D4", 64.0),
    (5, "D5", 128.0),
    (6, "E6", 192.0),
    (7, "E7", 256.0),
    (8, "E8", 256.0),
    (9, "L9", 512.0),
    (10, "L10", 768.0),
    (11, "K11", 972.0),
    (12, "K12", 729.0),
    (13, "K13", 972.0),
    (14, "L14", 768.0),
    (15, "L15", 512.0),
    (16, "BW16", 256.0),
    (17, "L17", 256.0),
    (18, "L18", 192.0),
    (19, "L19", 128.0),
    (20, "L20", 64.0),
    (21, "L21", 32.0),
    (22, "L22", 12.0),
    (23, "L23", 4.0),
    (24, "Leech", 1.0),
];

/// Center density `(sqrt(min_norm)/2)^k / sqrt(det)` of a lattice given its
/// minimal norm and Gram determinant.
pub fn center_density_from_det(k: usize, min_norm: f64, gram_det: f64) -> f64 {
    (min_norm.sqrt() / 2.0).powi(k as i32) / gram_det.sqrt()
}

/// Center density from a full Gram matrix and its known minimal norm.
pub fn center_density_from_gram(gram: &DMatrix<f64>, min_norm: f64) -> f64 {
    center_density_from_det(gram.nrows(), min_norm, gram.determinant())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityEntry {
    pub k: usize,
    pub lambda: f64,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CenterDensityTable {
    entries: BTreeMap<usize, DensityEntry>,
}

impl Default for CenterDensityTable {
    fn default() -> Self {
        let entries = BEST_KNOWN_LATTICES
            .iter()
            .map(|&(k, name, det)| {
                let lambda = center_density_from_det(k, 4.0, det);
                (k, DensityEntry { k, lambda, source: name.to_string() })
            })
            .collect();
        Self { entries }
    }
}

/// Shared instance of the built-in table.
pub fn default_table() -> &'static CenterDensityTable {
    static TABLE: OnceLock<CenterDensityTable> = OnceLock::new();
    TABLE.get_or_init(CenterDensityTable::default)
}

impl CenterDensityTable {
    /// Built-in table with the rows of `path` laid over it.
    pub fn with_overrides(path: &Path) -> Result<Self> {
        let mut table = Self::default();
        let mut reader = csv::Reader::from_path(path).map_err(|e| Error::csv(path, e))?;
        for row in reader.deserialize::<DensityEntry>() {
            let entry = row.map_err(|e| Error::csv(path, e))?;
            table.insert(entry)?;
        }
        Ok(table)
    }

    /// Explicit path first, then `SFORGE_DENSITY_TABLE`, then the built-in table.
    pub fn resolve(path: Option<&Path>) -> Result<Self> {
        let from_env = env::var_os(DENSITY_TABLE_ENV).map(PathBuf::from);
        match path.map(Path::to_path_buf).or(from_env) {
            Some(p) => Self::with_overrides(&p),
            None => Ok(Self::default()),
        }
    }

    pub fn insert(&mut self, entry: DensityEntry) -> Result<()> {
        if entry.k == 0 {
            return Err(Error::InvalidArgument("density entry with k = 0".into()));
        }
        if !(entry.lambda > 0.0 && entry.lambda <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "center density for k = {} must lie in (0, 1], got {}",
                entry.k, entry.lambda
            )));
        }
        self.entries.insert(entry.k, entry);
        Ok(())
    }

    pub fn entry(&self, k: usize) -> Option<&DensityEntry> {
        self.entries.get(&k)
    }

    pub fn entries(&self) -> impl Iterator<Item = &DensityEntry> {
        self.entries.values()
    }

    /// `Λ_k`.
    pub fn center_density(&self, k: usize) -> Result<f64> {
        self.entry(k).map(|e| e.lambda).ok_or(Error::MissingDensity(k))
    }

    /// `(π^k Λ_k / (M k^{k/2}))^{1/k}`, the half-angle `arcsin(ď/4)` before clamping.
    fn bound_angle(&self, m: u64, k: usize) -> Result<f64> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("bound needs M >= 2, got {m}")));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("bound needs k >= 1".into()));
        }
        let lambda = self.center_density(k)?;
        let kf = k as f64;
        // Logarithms keep pi^k and k^{k/2} in range for every k.
        let log_arg = kf * PI.ln() + lambda.ln() - (m as f64).ln() - 0.5 * kf * kf.ln();
        Ok((log_arg / kf).exp())
    }

    pub fn bound_info(&self, m: u64, k: usize) -> Result<BoundInfo> {
        let angle = self.bound_angle(m, k)?;
        let lambda_k = self.center_density(k)?;
        let (d_check, vacuous) = clamp_target(angle);
        let w = candidate_scale(m, k) * (d_check / 4.0).asin();
        Ok(BoundInfo { order: m, k, lambda_k, d_check, w, vacuous })
    }

    /// Target distance `ď = 4 sin((π^k Λ_k / (M k^{k/2}))^{1/k})`.
    pub fn target_distance(&self, m: u64, k: usize) -> Result<f64> {
        Ok(self.bound_info(m, k)?.d_check)
    }

    /// Candidate norm `W = (2M sqrt(k)/π) arcsin(ď/4)`.
    pub fn candidate_norm(&self, m: u64, k: usize) -> Result<f64> {
        Ok(self.bound_info(m, k)?.w)
    }

    /// Largest `M` permitted by the bound for minimum distance `d`:
    /// `π^k Λ_k / (arcsin(d/4)^k k^{k/2})`.
    pub fn max_points_bound(&self, d: f64, k: usize) -> Result<f64> {
        if !(d > 0.0 && d < 4.0) {
            return Err(Error::BoundDomain(d));
        }
        let lambda = self.center_density(k)?;
        let kf = k as f64;
        let log_m = kf * PI.ln() + lambda.ln() - kf * (d / 4.0).asin().ln() - 0.5 * kf * kf.ln();
        Ok(log_m.exp())
    }
}

/// `ď` from the half-angle. Past `π/2` `ď` is pinned to 2. Any `ď >= 2` is
/// flagged vacuous since no two points on the unit sphere are farther apart;
/// below `π/2` the value is kept so that `W` still follows from `ď`.
fn clamp_target(angle: f64) -> (f64, bool) {
    if angle > FRAC_PI_2 {
        (2.0, true)
    } else {
        let d = 4.0 * angle.sin();
        (d, d >= 2.0)
    }
}

/// `2M sqrt(k) / π`.
fn candidate_scale(m: u64, k: usize) -> f64 {
    2.0 * m as f64 * (k as f64).sqrt() / PI
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundInfo {
    pub order: u64,
    pub k: usize,
    pub lambda_k: f64,
    /// Target distance `ď`.
    pub d_check: f64,
    /// Candidate norm `W`.
    pub w: f64,
    /// Set when the packing bound exceeds the sphere diameter and `ď` was clamped to 2.
    pub vacuous: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> &'static CenterDensityTable {
        default_table()
    }

    #[test]
    fn known_densities() {
        let t = table();
        let close = |k, v: f64| assert!((t.center_density(k).unwrap() - v).abs() < 1e-15, "k = {k}");
        close(1, 0.5);
        close(2, 1.0 / (2.0 * 3f64.sqrt()));
        close(3, 1.0 / (4.0 * 2f64.sqrt()));
        close(4, 0.125);
        close(8, 1.0 / 16.0);
        close(24, 1.0);
        assert!(t.entries().all(|e| e.lambda > 0.0 && e.lambda <= 1.0));
        assert_eq!(t.entries().count(), 24);
        assert!(matches!(t.center_density(25), Err(Error::MissingDensity(25))));
    }

    #[test]
    fn target_distance_examples() {
        let t = table();
        assert!((t.target_distance(10, 2).unwrap() - 1.474).abs() < 1e-3);
        assert!((t.target_distance(20, 3).unwrap() - 1.465).abs() < 1e-3);
        assert!((t.target_distance(1000, 2).unwrap() - 0.150).abs() < 1e-3);
    }

    #[test]
    fn candidate_norm_examples() {
        let t = table();
        let w20 = t.candidate_norm(20, 2).unwrap();
        assert!((w20 - 4.806).abs() < 1e-3, "{w20}");
        assert!((w20 - 4.805).abs() < 0.01);
        assert!((26f64.sqrt() - w20).abs() / w20 < 0.1);
        assert!((t.candidate_norm(10, 2).unwrap() - 3.398).abs() < 1e-3);
        let info = t.bound_info(37, 3).unwrap();
        assert!((info.w / candidate_scale(37, 3) - (info.d_check / 4.0).asin()).abs() < 1e-15);
    }

    #[test]
    fn max_points_round_trip() {
        let t = table();
        for k in 1..=24 {
            for m in [2u64, 7, 64, 1000, 1 << 19] {
                let info = t.bound_info(m, k).unwrap();
                if info.vacuous {
                    continue;
                }
                let back = t.max_points_bound(info.d_check, k).unwrap();
                assert!((back - m as f64).abs() / (m as f64) < 1e-6, "k={k} m={m} back={back}");
            }
        }
        let near = t.max_points_bound(1.474, 2).unwrap();
        assert!((near - 10.0).abs() < 0.05, "{near}");
        assert!(t.max_points_bound(1e-6, 2).unwrap() > t.max_points_bound(1e-3, 2).unwrap());
        assert!(matches!(t.max_points_bound(0.0, 2), Err(Error::BoundDomain(_))));
        assert!(matches!(t.max_points_bound(4.0, 2), Err(Error::BoundDomain(_))));
    }

    #[test]
    fn target_distance_decreases_in_m() {
        let t = table();
        for k in [1, 2, 3, 8, 24] {
            let mut prev = f64::INFINITY;
            for m in 2..400u64 {
                let d = t.target_distance(m, k).unwrap();
                assert!(d <= prev && d > 0.0 && d <= 4.0);
                if !t.bound_info(m, k).unwrap().vacuous {
                    assert!(d < prev);
                }
                prev = d;
            }
        }
    }

    #[test]
    fn clamp_past_quarter_turn() {
        assert_eq!(clamp_target(1.6), (2.0, true));
        let (d, vacuous) = clamp_target(1.5);
        assert!(vacuous && (d - 4.0 * 1.5f64.sin()).abs() < 1e-15);
        assert_eq!(clamp_target(0.3), (4.0 * 0.3f64.sin(), false));

        // Few points in high dimension: the target exceeds the diameter.
        let info = table().bound_info(64, 24).unwrap();
        assert!(info.vacuous && info.d_check > 2.05 && info.d_check < 2.06);
        assert!((info.w - candidate_scale(64, 24) * (info.d_check / 4.0).asin()).abs() < 1e-9);
        assert!(!table().bound_info(256, 24).unwrap().vacuous);
    }

    #[test]
    fn override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("density.csv");
        std::fs::write(&path, "k,lambda,source\n2,0.25,square\n30,0.5,custom\n").unwrap();
        let t = CenterDensityTable::with_overrides(&path).unwrap();
        assert_eq!(t.center_density(2).unwrap(), 0.25);
        assert_eq!(t.entry(30).unwrap().source, "custom");
        assert_eq!(t.center_density(3).unwrap(), table().center_density(3).unwrap());

        std::fs::write(&path, "k,lambda,source\n2,1.5,bad\n").unwrap();
        assert!(CenterDensityTable::with_overrides(&path).is_err());
        assert!(CenterDensityTable::with_overrides(&dir.path().join("missing.csv")).is_err());
    }
}
