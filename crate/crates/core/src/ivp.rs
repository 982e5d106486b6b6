//! The initial vector problem as a linear program.
//!
//! For a fixed generator, `||g^i x - x||^2` is linear in the squared block
//! radii `y`. Maximizing the smallest of these values over the simplex
//! `sum(y) = 1, y >= 0` is the LP
//!
//! ```text
//! min -t   s.t.   sum(y) <= 1,  -sum(y) <= -1,  t - m_i . y <= 0  (i = 1..floor(M/2)),
//! ```
//!
//! with variables `w = (t, y)`. Rows `i > M/2` repeat rows `M - i` and are
//! left out.

use crate::codes::{distance_profile, min_distance_direct, CyclicGenerator, DistanceProfile, GroupCode};
use crate::error::Result;
use crate::simplex::{solve_lp, LinearProgram, LpSolution};

/// Slack used when collecting the active constraints of a solution.
pub const ACTIVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct IvpSolution {
    /// Squared radii, `sum(y) = 1`.
    pub y: Vec<f64>,
    /// Optimal squared minimum distance, `min_i f_i(y)`.
    pub t: f64,
    /// Zero-phase initial vector built from `y`.
    pub x: Vec<f64>,
    /// Minimum distance `sqrt(t)`.
    pub d: f64,
    /// Indices `i` (1-based, `i <= M/2`) whose constraint is tight.
    pub active_set: Vec<u64>,
    /// Raw LP objective, `-t` up to solver round-off.
    pub lp_objective: f64,
    pub iterations: usize,
}

impl IvpSolution {
    /// Minimum distance of the materialized orbit by the pairwise oracle.
    /// Quadratic in `M`; meant for verification.
    pub fn direct_distance(&self, g: &CyclicGenerator) -> Result<f64> {
        let code = GroupCode::new(g.clone(), self.x.clone())?;
        Ok(min_distance_direct(&code))
    }
}

pub fn build_ivp_lp(profile: &DistanceProfile) -> LinearProgram {
    let cols = profile.cols() + 1;
    let rows = profile.rows() + 2;
    let mut matrix = Vec::with_capacity(rows * cols);

    matrix.push(0.0);
    matrix.extend(std::iter::repeat_n(1.0, profile.cols()));
    matrix.push(0.0);
    matrix.extend(std::iter::repeat_n(-1.0, profile.cols()));
    for row in profile.iter_rows() {
        matrix.push(1.0);
        matrix.extend(row.iter().map(|m| -m));
    }

    let mut cost = vec![0.0; cols];
    cost[0] = -1.0;
    let mut rhs = vec![0.0; rows];
    rhs[0] = 1.0;
    rhs[1] = -1.0;
    // t <= m_1 . y <= max coefficient on the simplex.
    let mut upper = vec![f64::INFINITY; cols];
    upper[0] = profile.max_coefficient().max(1.0);

    LinearProgram { cost, matrix, rhs, upper }
}

/// Solves the LP for an arbitrary profile and packages the optimum.
pub fn solve_profile(profile: &DistanceProfile) -> Result<ProfileOptimum> {
    if profile.rows() == 0 {
        let mut y = vec![0.0; profile.cols()];
        if let Some(first) = y.first_mut() {
            *first = 1.0;
        }
        return Ok(ProfileOptimum { y, t: f64::INFINITY, active_set: Vec::new(), lp_objective: f64::NEG_INFINITY, iterations: 0 });
    }
    let lp = build_ivp_lp(profile);
    let LpSolution { values, objective, iterations, .. } = solve_lp(&lp)?;

    let mut y: Vec<f64> = values[1..].iter().map(|v| v.max(0.0)).collect();
    let total: f64 = y.iter().sum();
    y.iter_mut().for_each(|v| *v /= total);

    let fs: Vec<f64> = profile.values(&y).collect();
    let t = fs.iter().copied().fold(f64::INFINITY, f64::min);
    let active_set = fs
        .iter()
        .enumerate()
        .filter(|(_, &f)| f - t <= ACTIVE_TOL)
        .map(|(i, _)| i as u64 + 1)
        .collect();
    Ok(ProfileOptimum { y, t, active_set, lp_objective: objective, iterations })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileOptimum {
    pub y: Vec<f64>,
    pub t: f64,
    pub active_set: Vec<u64>,
    pub lp_objective: f64,
    pub iterations: usize,
}

/// Optimal initial vector and minimum distance for a generator.
pub fn solve_ivp(g: &CyclicGenerator) -> Result<IvpSolution> {
    let profile = distance_profile(g);
    let opt = solve_profile(&profile)?;
    let x = g.initial_vector(&opt.y);
    Ok(IvpSolution {
        d: opt.t.sqrt(),
        x,
        y: opt.y,
        t: opt.t,
        active_set: opt.active_set,
        lp_objective: opt.lp_objective,
        iterations: opt.iterations,
    })
}
