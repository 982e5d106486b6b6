//! Efficiency-chart coordinates, classical baselines and bound ratios.
//!
//! A code with `M` points and minimum distance `d` in `R^n` has angular
//! separation `ρ = 2 asin(d/2)` (radians), rate `R = (2/n) log2 M` and
//! `K = (1 - ρ) log2 M`.

use std::collections::BTreeSet;
use std::io::Write;

use serde::Serialize;

use crate::catalog::CodeRecord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EfficiencyPoint {
    #[serde(rename = "M")]
    pub order: u64,
    pub n: usize,
    pub d: f64,
    pub rho: f64,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "R")]
    pub r: f64,
}

pub fn efficiency_point(order: u64, n: usize, d: f64) -> Result<EfficiencyPoint> {
    if !(0.0..=2.0).contains(&d) {
        return Err(Error::InvalidArgument(format!("distance {d} outside [0, 2]")));
    }
    if order == 0 || n == 0 {
        return Err(Error::InvalidArgument("M and n must be positive".into()));
    }
    let rho = 2.0 * (d / 2.0).asin();
    let bits = (order as f64).log2();
    Ok(EfficiencyPoint { order, n, d, rho, k: (1.0 - rho) * bits, r: 2.0 / n as f64 * bits })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Baseline {
    pub order: u64,
    pub d: f64,
    pub cyclic: bool,
}

/// Regular simplex: `n + 1` points, always a cyclic group code.
pub fn simplex_baseline(n: usize) -> Baseline {
    let m = n as f64 + 1.0;
    Baseline { order: n as u64 + 1, d: (2.0 * m / (m - 1.0)).sqrt(), cyclic: true }
}

/// Biorthogonal code `±e_i`; cyclic only in odd dimension.
pub fn biorthogonal_baseline(n: usize) -> Baseline {
    Baseline { order: 2 * n as u64, d: 2f64.sqrt(), cyclic: n % 2 == 1 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Series {
    Code,
    Simplex,
    Biorthogonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChartRow {
    #[serde(rename = "M")]
    pub order: u64,
    pub n: usize,
    pub d: f64,
    pub rho: f64,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub series: Series,
}

impl ChartRow {
    fn new(p: EfficiencyPoint, series: Series) -> Self {
        Self { order: p.order, n: p.n, d: p.d, rho: p.rho, k: p.k, r: p.r, series }
    }
}

/// One `code` row per record followed by the simplex and biorthogonal
/// rows for every dimension present.
pub fn chart_rows<'a>(records: impl IntoIterator<Item = &'a CodeRecord>) -> Result<Vec<ChartRow>> {
    let mut rows = Vec::new();
    let mut dims = BTreeSet::new();
    for r in records {
        rows.push(ChartRow::new(efficiency_point(r.order, r.dim, r.d)?, Series::Code));
        dims.insert(r.dim);
    }
    for n in dims {
        for (base, series) in [(simplex_baseline(n), Series::Simplex), (biorthogonal_baseline(n), Series::Biorthogonal)] {
            rows.push(ChartRow::new(efficiency_point(base.order, n, base.d)?, series));
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioPoint {
    #[serde(rename = "log2M")]
    pub log2m: f64,
    pub ratio: f64,
    pub n: usize,
}

/// `(log2 M, d / ď)` sorted by `M`. All records must share `n`.
pub fn ratio_series<'a>(records: impl IntoIterator<Item = &'a CodeRecord>) -> Result<Vec<RatioPoint>> {
    let mut records: Vec<&CodeRecord> = records.into_iter().collect();
    let Some(first) = records.first() else {
        return Err(Error::InvalidArgument("ratio series needs at least one record".into()));
    };
    let n = first.dim;
    if let Some(other) = records.iter().find(|r| r.dim != n) {
        return Err(Error::InvalidArgument(format!("mixed dimensions {n} and {}", other.dim)));
    }
    if let Some(bad) = records.iter().find(|r| !(r.d_check > 0.0)) {
        return Err(Error::InvalidArgument(format!("record for M = {} has no target distance", bad.order)));
    }
    records.sort_by_key(|r| r.order);
    Ok(records
        .into_iter()
        .map(|r| RatioPoint { log2m: (r.order as f64).log2(), ratio: r.d / r.d_check, n })
        .collect())
}

/// Writes any serializable rows as headed CSV.
pub fn write_csv<W: Write, T: Serialize>(rows: &[T], out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}
