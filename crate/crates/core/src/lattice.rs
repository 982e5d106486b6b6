//! The integer lattice attached to a cyclic generator and the flat-torus
//! picture of the code.
//!
//! For `g` with exponents `b` in `R^{2k}`, the group elements are `g^i`,
//! whose exponent vectors `i*b` together with `M Z^k` span a lattice
//! `Λ_G ⊂ Z^k` of index `M^{k-1}`. Scaling coordinate `j` by `2π x_j / M`
//! and wrapping it on a circle of radius `x_j` reproduces the orbit of the
//! zero-phase initial vector `(x_1, 0, ..., x_k, 0)`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;

use serde::Serialize;

use crate::arith::fold;
use crate::codes::CyclicGenerator;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatedLattice {
    order: u64,
    exponents: Vec<u64>,
    basis: Vec<Vec<i64>>,
    representatives: Vec<Vec<u64>>,
}

pub fn associated_lattice(g: &CyclicGenerator) -> Result<AssociatedLattice> {
    if !g.dim().is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "associated lattice needs an even dimension, got {}",
            g.dim()
        )));
    }
    let m = g.order();
    let k = g.blocks();
    let b = g.exponents().to_vec();

    let representatives = (0..m)
        .map(|i| b.iter().map(|&bj| ((i as u128 * bj as u128) % m as u128) as u64).collect())
        .collect();

    let mut generators: Vec<Vec<i128>> = vec![b.iter().map(|&v| v as i128).collect()];
    for j in 0..k {
        let mut row = vec![0i128; k];
        row[j] = m as i128;
        generators.push(row);
    }
    let basis = hermite_basis(generators, k);

    Ok(AssociatedLattice { order: m, exponents: b, basis, representatives })
}

impl AssociatedLattice {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    /// Upper-triangular (Hermite) basis, one lattice vector per row.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// The `M` lattice points `i*b mod M` in `[0, M)^k`, indexed by `i`.
    pub fn representatives(&self) -> &[Vec<u64>] {
        &self.representatives
    }

    /// `[Z^k : Λ_G]`, the product of the Hermite pivots.
    pub fn index(&self) -> i128 {
        self.basis.iter().enumerate().map(|(i, r)| r[i] as i128).product()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.rank() {
            return false;
        }
        let mut rest: Vec<i128> = v.iter().map(|&c| c as i128).collect();
        for (i, row) in self.basis.iter().enumerate() {
            let pivot = row[i] as i128;
            if rest[i] % pivot != 0 {
                return false;
            }
            let q = rest[i] / pivot;
            for (r, &c) in rest.iter_mut().zip(row) {
                *r -= q * c as i128;
            }
        }
        rest.iter().all(|&c| c == 0)
    }

    /// Sorted squared norms of the representatives folded onto `[0, M/2]^k`.
    /// Isometric generators give identical lists.
    pub fn folded_norms_sq(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .representatives
            .iter()
            .map(|r| r.iter().map(|&c| fold(c, self.order).pow(2)).sum())
            .collect();
        out.sort_unstable();
        out
    }

    /// Shortest nonzero lattice vector among the representatives and their
    /// `±M` shifts, returned with its norm.
    pub fn shortest_representative(&self) -> Option<(Vec<i64>, f64)> {
        let m = self.order as i64;
        self.representatives
            .iter()
            .filter(|r| r.iter().any(|&c| c != 0))
            .map(|r| {
                let centered: Vec<i64> = r
                    .iter()
                    .map(|&c| {
                        let c = c as i64;
                        if 2 * c > m { c - m } else { c }
                    })
                    .collect();
                let n = centered.iter().map(|&c| (c * c) as f64).sum::<f64>().sqrt();
                (centered, n)
            })
            .min_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)))
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
fn hermite_basis(mut rows: Vec<Vec<i128>>, cols: usize) -> Vec<Vec<i64>> {
    let mut top = 0usize;
    for c in 0..cols {
        loop {
            let pivot = (top..rows.len())
                .filter(|&i| rows[i][c] != 0)
                .min_by_key(|&i| rows[i][c].abs());
            let Some(p) = pivot else { break };
            rows.swap(top, p);
            let mut cleared = true;
            for i in top + 1..rows.len() {
                if rows[i][c] != 0 {
                    let q = rows[i][c] / rows[top][c];
                    let (head, tail) = rows.split_at_mut(i);
                    for (a, &b) in tail[0].iter_mut().zip(&head[top]) {
                        *a -= q * b;
                    }
                    cleared &= tail[0][c] == 0;
                }
            }
            if cleared {
                break;
            }
        }
        if top < rows.len() && rows[top][c] != 0 {
            if rows[top][c] < 0 {
                rows[top].iter_mut().for_each(|v| *v = -*v);
            }
            for i in 0..top {
                let q = rows[i][c].div_euclid(rows[top][c]);
                let (head, tail) = rows.split_at_mut(top);
                for (a, &b) in head[i].iter_mut().zip(&tail[0]) {
                    *a -= q * b;
                }
            }
            top += 1;
        }
    }
    rows.truncate(top);
    rows.into_iter().map(|r| r.into_iter().map(|v| v as i64).collect()).collect()
}

/// Points of `Λ_G(x)`: representative `y` mapped to `(2π x_j / M) y_j`.
///
/// Radii must be positive; their squares need not sum to one here.
pub fn scaled_lattice(lat: &AssociatedLattice, radii: &[f64]) -> Result<Vec<Vec<f64>>> {
    check_radii(radii, lat.rank())?;
    let m = lat.order as f64;
    Ok(lat
        .representatives
        .iter()
        .map(|r| r.iter().zip(radii).map(|(&c, &x)| 2.0 * PI * x / m * c as f64).collect())
        .collect())
}

fn check_radii(radii: &[f64], k: usize) -> Result<()> {
    if radii.len() != k {
        return Err(Error::InvalidArgument(format!("expected {k} radii, got {}", radii.len())));
    }
    if let Some(r) = radii.iter().find(|&&r| !(r > 0.0)) {
        return Err(Error::InvalidArgument(format!("torus radius must be positive, got {r}")));
    }
    Ok(())
}

/// Flat torus of radii `x_1..x_k` inside the unit sphere of `R^{2k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusMap {
    radii: Vec<f64>,
}

impl TorusMap {
    pub fn new(radii: Vec<f64>) -> Result<Self> {
        check_radii(&radii, radii.len())?;
        let total: f64 = radii.iter().map(|r| r * r).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!("squared radii sum to {total}, expected 1")));
        }
        Ok(Self { radii })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// `ψ_x(y) = (x_1 cos(y_1/x_1), x_1 sin(y_1/x_1), ...)`.
    pub fn map(&self, y: &[f64]) -> Vec<f64> {
        self.radii
            .iter()
            .zip(y)
            .flat_map(|(&x, &v)| {
                let (s, c) = (v / x).sin_cos();
                [x * c, x * s]
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlotTag {
    Rep,
    Shell,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlotRow {
    pub px: f64,
    pub py: f64,
    pub tag: PlotTag,
}

/// Number of samples on the quarter arc of radius `W`.
pub const SHELL_SAMPLES: usize = 65;

/// Plot data for a planar (`k = 2`) lattice: the `M` representatives, their
/// translates covering `[-M/4, 5M/4)^2` when `periodic` is set, and an arc of
/// radius `shell` when given.
pub fn plot_rows(lat: &AssociatedLattice, shell: Option<f64>, periodic: bool) -> Result<Vec<PlotRow>> {
    if lat.rank() != 2 {
        return Err(Error::InvalidArgument(format!(
            "lattice plots need k = 2 (n = 4), got k = {}",
            lat.rank()
        )));
    }
    let m = lat.order as i64;
    let shifts: Vec<i64> = if periodic { vec![-1, 0, 1] } else { vec![0] };
    let (lo, hi) = (-(m as f64) / 4.0, 5.0 * m as f64 / 4.0);
    let mut rows = Vec::new();
    for r in &lat.representatives {
        for &sx in &shifts {
            for &sy in &shifts {
                let px = (r[0] as i64 + sx * m) as f64;
                let py = (r[1] as i64 + sy * m) as f64;
                if (lo..hi).contains(&px) && (lo..hi).contains(&py) {
                    rows.push(PlotRow { px, py, tag: PlotTag::Rep });
                }
            }
        }
    }
    if let Some(w) = shell {
        for s in 0..SHELL_SAMPLES {
            let theta = FRAC_PI_2 * s as f64 / (SHELL_SAMPLES - 1) as f64;
            rows.push(PlotRow { px: w * theta.cos(), py: w * theta.sin(), tag: PlotTag::Shell });
        }
    }
    Ok(rows)
}

/// Writes plot rows as CSV with header `px,py,tag`.
pub fn write_plot_csv<W: Write>(rows: &[PlotRow], out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}
