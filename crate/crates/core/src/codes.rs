//! Cyclic generators in pseudo-diagonal form and the codes they generate.
//!
//! A generator of order `M` in `R^n` is a block-diagonal orthogonal matrix
//! made of `k = floor(n/2)` planar rotations by `2*pi*b_j/M`, followed by a
//! single `±1` entry when `n` is odd. The exponent vector `b` determines the
//! whole group, so everything in this module works from `b` directly and only
//! materializes matrices when asked to.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix2};

use crate::arith::{fold, gcd_with, units};
use crate::error::{Error, Result};

/// Unit-norm tolerance for initial vectors.
pub const UNIT_TOL: f64 = 1e-12;

/// Points closer than this are treated as coinciding.
pub const COINCIDENT_TOL: f64 = 1e-12;

/// Iterated orbits are renormalized after this many generator applications.
const RENORMALIZE_EVERY: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicGenerator {
    order: u64,
    dim: usize,
    exponents: Vec<u64>,
    reflection: Option<i8>,
}

impl CyclicGenerator {
    /// Builds the generator for exponents `b` using the default trailing
    /// entry `+1` in odd dimension.
    pub fn new(order: u64, dim: usize, exponents: Vec<u64>) -> Result<Self> {
        Self::with_reflection(order, dim, exponents, 1)
    }

    /// Builds a generator with an explicit trailing entry `mu` (ignored for
    /// even `dim`). `mu = -1` is only an order-`M` element when `M` is even.
    pub fn with_reflection(order: u64, dim: usize, exponents: Vec<u64>, mu: i8) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGenerator("group order must be positive".into()));
        }
        if dim == 0 {
            return Err(Error::InvalidGenerator("dimension must be positive".into()));
        }
        if exponents.len() != dim / 2 {
            return Err(Error::InvalidGenerator(format!(
                "dimension {dim} needs {} exponents, got {}",
                dim / 2,
                exponents.len()
            )));
        }
        if let Some(&b) = exponents.iter().find(|&&b| b > order) {
            return Err(Error::InvalidGenerator(format!("exponent {b} exceeds M = {order}")));
        }
        let g = gcd_with(&exponents, order);
        if g != 1 {
            return Err(Error::InvalidGenerator(format!(
                "gcd(b, M) = {g}; the exponents generate a group of order {}",
                order / g
            )));
        }
        let reflection = if dim % 2 == 1 {
            match mu {
                1 => Some(1),
                -1 if order.is_multiple_of(2) => Some(-1),
                -1 => {
                    return Err(Error::InvalidGenerator(format!(
                        "trailing entry -1 has order 2, which does not divide M = {order}"
                    )))
                }
                other => {
                    return Err(Error::InvalidGenerator(format!("trailing entry must be ±1, got {other}")))
                }
            }
        } else {
            None
        };
        Ok(Self { order, dim, exponents, reflection })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of 2×2 rotation blocks.
    pub fn blocks(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Trailing `±1` entry, present only in odd dimension.
    pub fn reflection(&self) -> Option<i8> {
        self.reflection
    }

    /// Number of squared-radius variables `n - k` in the initial vector problem.
    pub fn radii_count(&self) -> usize {
        self.dim - self.blocks()
    }

    /// The n×n generator matrix.
    pub fn matrix(&self) -> DMatrix<f64> {
        generator_matrix(self)
    }

    fn block_rotations(&self) -> Vec<(f64, f64)> {
        self.exponents
            .iter()
            .map(|&b| {
                let angle = 2.0 * PI * (b % self.order) as f64 / self.order as f64;
                (angle.cos(), angle.sin())
            })
            .collect()
    }

    /// Squared block radii `y` of a vector: `y_j = x_{2j-1}^2 + x_{2j}^2`,
    /// plus `x_n^2` in odd dimension.
    pub fn squared_radii(&self, x: &[f64]) -> Vec<f64> {
        let mut y: Vec<f64> = x.chunks_exact(2).map(|p| p[0] * p[0] + p[1] * p[1]).collect();
        if self.dim % 2 == 1 {
            let last = x[self.dim - 1];
            y.push(last * last);
        }
        y
    }

    /// Zero-phase initial vector `(sqrt(y_1), 0, sqrt(y_2), 0, ...)`.
    pub fn initial_vector(&self, y: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.dim];
        for (j, &yj) in y.iter().take(self.blocks()).enumerate() {
            x[2 * j] = yj.max(0.0).sqrt();
        }
        if self.dim % 2 == 1 {
            x[self.dim - 1] = y[self.blocks()].max(0.0).sqrt();
        }
        x
    }
}

/// Planar rotation by `2*pi*b/M`.
pub fn rotation_block(b: u64, m: u64) -> Matrix2<f64> {
    assert!(m >= 1, "rotation order must be positive");
    let angle = 2.0 * PI * (b % m) as f64 / m as f64;
    let (s, c) = angle.sin_cos();
    Matrix2::new(c, -s, s, c)
}

pub fn generator_matrix(g: &CyclicGenerator) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(g.dim, g.dim);
    for (j, &b) in g.exponents.iter().enumerate() {
        let r = rotation_block(b, g.order);
        out.view_mut((2 * j, 2 * j), (2, 2)).copy_from(&r);
    }
    if let Some(mu) = g.reflection {
        out[(g.dim - 1, g.dim - 1)] = f64::from(mu);
    }
    out
}

/// Applies the generator `steps` times to `x` in place.
pub fn apply_generator(g: &CyclicGenerator, x: &mut [f64], steps: u64) {
    let rot = g.block_rotations();
    for _ in 0..steps {
        step(g, &rot, x);
    }
}

fn step(g: &CyclicGenerator, rot: &[(f64, f64)], x: &mut [f64]) {
    for (pair, &(c, s)) in x.chunks_exact_mut(2).zip(rot) {
        let (a, b) = (pair[0], pair[1]);
        pair[0] = c * a - s * b;
        pair[1] = s * a + c * b;
    }
    if g.reflection == Some(-1) {
        x[g.dim - 1] = -x[g.dim - 1];
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// The orbit `{g^i x : i = 0..M-1}` by repeated application of the generator.
pub fn orbit(g: &CyclicGenerator, x: &[f64]) -> Vec<Vec<f64>> {
    debug_assert_eq!(x.len(), g.dim);
    let rot = g.block_rotations();
    let target = norm(x);
    let mut cur = x.to_vec();
    let mut points = Vec::with_capacity(g.order as usize);
    for i in 1..=g.order {
        points.push(cur.clone());
        step(g, &rot, &mut cur);
        if i % RENORMALIZE_EVERY == 0 {
            let scale = target / norm(&cur);
            cur.iter_mut().for_each(|v| *v *= scale);
        }
    }
    points
}

/// A materialized cyclic group code.
#[derive(Debug, Clone)]
pub struct GroupCode {
    generator: CyclicGenerator,
    initial_vector: Vec<f64>,
    points: Vec<Vec<f64>>,
}

impl GroupCode {
    pub fn new(generator: CyclicGenerator, initial_vector: Vec<f64>) -> Result<Self> {
        if initial_vector.len() != generator.dim {
            return Err(Error::InvalidArgument(format!(
                "initial vector has length {}, expected {}",
                initial_vector.len(),
                generator.dim
            )));
        }
        let len = norm(&initial_vector);
        if (len - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidArgument(format!("initial vector norm is {len}, expected 1")));
        }
        let points = orbit(&generator, &initial_vector);
        Ok(Self { generator, initial_vector, points })
    }

    pub fn generator(&self) -> &CyclicGenerator {
        &self.generator
    }

    pub fn initial_vector(&self) -> &[f64] {
        &self.initial_vector
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Minimum pairwise distance by exhaustive comparison of all point pairs.
///
/// Returns `f64::INFINITY` for a single-point code and `0.0` when two points
/// coincide within [`COINCIDENT_TOL`].
pub fn min_distance_direct(code: &GroupCode) -> f64 {
    let pts = code.points();
    let mut best = f64::INFINITY;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let d2: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
            best = best.min(d2);
        }
    }
    if best.is_infinite() {
        return best;
    }
    let d = best.sqrt();
    if d < COINCIDENT_TOL {
        0.0
    } else {
        d
    }
}

/// Minimum distance `min_{j != 0} ||g^j x - x||` through the distance profile.
/// Returns `f64::INFINITY` when `M = 1`.
pub fn min_distance_orbit(g: &CyclicGenerator, x: &[f64]) -> f64 {
    let y = g.squared_radii(x);
    distance_profile(g).min_value(&y).sqrt()
}

/// Coefficients of `f_i(y) = ||g^i x - x||^2` as a linear function of the
/// squared radii, for `i = 1..floor(M/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceProfile {
    order: u64,
    cols: usize,
    data: Vec<f64>,
}

/// Row `i` (any `1 <= i < M`) of the profile. The product `i*b_j` is reduced
/// and folded in integers first, so rows `i` and `M - i` agree bit for bit.
pub fn profile_row(g: &CyclicGenerator, i: u64) -> Vec<f64> {
    let m = g.order;
    let mut row: Vec<f64> = g
        .exponents
        .iter()
        .map(|&b| {
            let r = ((i as u128 * b as u128) % m as u128) as u64;
            let s = (PI * fold(r, m) as f64 / m as f64).sin();
            4.0 * s * s
        })
        .collect();
    if let Some(mu) = g.reflection {
        let flipped = mu == -1 && i % 2 == 1;
        row.push(if flipped { 4.0 } else { 0.0 });
    }
    row
}

pub fn distance_profile(g: &CyclicGenerator) -> DistanceProfile {
    let rows = g.order / 2;
    let cols = g.radii_count();
    let mut data = Vec::with_capacity(rows as usize * cols);
    for i in 1..=rows {
        data.extend(profile_row(g, i));
    }
    DistanceProfile { order: g.order, cols, data }
}

impl DistanceProfile {
    /// Builds a profile from raw rows; used for rescaled or synthetic problems.
    pub fn from_rows(order: u64, cols: usize, rows: &[Vec<f64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged profile row");
            data.extend_from_slice(r);
        }
        Self { order, cols, data }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rows(&self) -> usize {
        if self.cols == 0 {
            0
        } else {
            self.data.len() / self.cols
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Coefficient row for `i` in `1..=rows()`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[(i - 1) * self.cols..i * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.cols.max(1))
    }

    /// `f_i(y)` for every row.
    pub fn values<'a>(&'a self, y: &'a [f64]) -> impl Iterator<Item = f64> + 'a {
        self.iter_rows().map(move |r| r.iter().zip(y).map(|(a, b)| a * b).sum())
    }

    /// `min_i f_i(y)`; infinite when there are no rows.
    pub fn min_value(&self, y: &[f64]) -> f64 {
        self.values(y).fold(f64::INFINITY, f64::min)
    }

    pub fn max_coefficient(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            order: self.order,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    /// Same rows in a different order (`perm[r]` is the source row index, 0-based).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows());
        let rows: Vec<Vec<f64>> = perm.iter().map(|&p| self.row(p + 1).to_vec()).collect();
        Self::from_rows(self.order, self.cols, &rows)
    }
}

/// Canonical exponents of the isometry class of `b` modulo `m`: the
/// lexicographically smallest sorted, folded image of `u*b` over all units `u`.
pub fn canonical_exponents(b: &[u64], m: u64) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    let mut buf = vec![0u64; b.len()];
    for u in half_units(m) {
        image_into(b, m, u, &mut buf);
        if best.as_ref().is_none_or(|cur| buf < *cur) {
            best = Some(buf.clone());
        }
    }
    best.unwrap_or_default()
}

/// Whether `b` (sorted and folded already) is its own canonical form. Cheaper
/// than [`canonical_exponents`] because it stops at the first smaller image.
pub fn is_canonical(b: &[u64], m: u64, unit_list: &[u64]) -> bool {
    let mut buf = vec![0u64; b.len()];
    for &u in unit_list {
        image_into(b, m, u, &mut buf);
        if buf.as_slice() < b {
            return false;
        }
    }
    true
}

/// Units `u <= m/2`; `u` and `m - u` give identical folded images.
pub fn half_units(m: u64) -> Vec<u64> {
    let all = units(m);
    if m <= 2 {
        return all;
    }
    all.into_iter().filter(|&u| 2 * u <= m).collect()
}

fn image_into(b: &[u64], m: u64, u: u64, buf: &mut [u64]) {
    for (slot, &bj) in buf.iter_mut().zip(b) {
        *slot = fold(((u as u128 * bj as u128) % m as u128) as u64, m);
    }
    buf.sort_unstable();
}

/// Canonical representative of the generator's isometry class.
pub fn canonical_form(g: &CyclicGenerator) -> CyclicGenerator {
    CyclicGenerator {
        order: g.order,
        dim: g.dim,
        exponents: canonical_exponents(&g.exponents, g.order),
        reflection: g.reflection,
    }
}
