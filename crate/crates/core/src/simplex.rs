//! Dense dual simplex for `min c'w  s.t.  Aw <= rhs, 0 <= w <= upper`.
//!
//! The initial-vector LP has many rows and only a handful of columns, so the
//! solver keeps a condensed tableau with one column per nonbasic variable:
//! its size stays `rows × cols` no matter how many slacks enter the basis,
//! and one pivot costs `O(rows · cols)`.
//!
//! The dual simplex needs a dual-feasible start (`c >= 0`). Columns with a
//! negative cost are therefore reflected through their finite upper bound,
//! `w_j = u_j - w'_j`, and the bound itself becomes an ordinary row. Starting
//! from the all-slack basis, the method then only has to repair primal
//! infeasibility.

use crate::error::{Error, Result};

/// A linear program in inequality form with nonnegative variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    /// Cost vector `c`.
    pub cost: Vec<f64>,
    /// Row-major constraint matrix `A` with `cost.len()` columns.
    pub matrix: Vec<f64>,
    /// Right-hand side, one entry per row of `A`.
    pub rhs: Vec<f64>,
    /// Upper bounds; `f64::INFINITY` when a variable is only bounded below.
    pub upper: Vec<f64>,
}

impl LinearProgram {
    pub fn cols(&self) -> usize {
        self.cost.len()
    }

    pub fn rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.cols();
        &self.matrix[i * n..(i + 1) * n]
    }

    /// Same program with rows listed in a different order (`perm[r]` = source row).
    pub fn permuted_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows());
        let mut matrix = Vec::with_capacity(self.matrix.len());
        for &p in perm {
            matrix.extend_from_slice(self.row(p));
        }
        Self {
            cost: self.cost.clone(),
            matrix,
            rhs: perm.iter().map(|&p| self.rhs[p]).collect(),
            upper: self.upper.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Primal and dual feasibility tolerance.
    pub feasibility_tol: f64,
    /// Smallest pivot magnitude admitted by the ratio test.
    pub pivot_tol: f64,
    /// Hard cap on pivots; `None` picks `50 * (rows + cols) + 100`.
    pub max_iterations: Option<usize>,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self { feasibility_tol: 1e-9, pivot_tol: 1e-11, max_iterations: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    /// Optimal `w`.
    pub values: Vec<f64>,
    /// `c'w` at the optimum.
    pub objective: f64,
    /// Rows of the original program whose slack is zero at the optimum.
    pub tight_rows: Vec<usize>,
    pub iterations: usize,
    /// Whether the run switched to Bland's rule after stalling.
    pub used_bland: bool,
}

pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    solve_lp_with(lp, &SimplexOptions::default())
}

pub fn solve_lp_with(lp: &LinearProgram, opts: &SimplexOptions) -> Result<LpSolution> {
    let mut tab = Tableau::new(lp)?;
    let limit = opts.max_iterations.unwrap_or(50 * (tab.rows + tab.cols) + 100);
    let stall_limit = 10 * tab.rows.max(1);
    let mut degenerate_run = 0usize;
    let mut bland = false;
    let mut iterations = 0usize;

    loop {
        let Some(r) = tab.leaving_row(opts.feasibility_tol, bland) else { break };
        let Some(s) = tab.entering_col(r, opts.pivot_tol) else {
            return Err(Error::Infeasible);
        };
        if iterations == limit {
            return Err(Error::IterationLimit(limit));
        }
        if tab.reduced[s] <= opts.feasibility_tol {
            degenerate_run += 1;
            if degenerate_run > stall_limit {
                bland = true;
            }
        } else {
            degenerate_run = 0;
        }
        tab.pivot(r, s);
        iterations += 1;
    }

    Ok(tab.extract(lp, opts.feasibility_tol, iterations, bland))
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// Basic variables satisfy `x_B = beta - T x_N`.
    t: Vec<f64>,
    beta: Vec<f64>,
    reduced: Vec<f64>,
    /// Variable ids: `0..cols` structural, `cols + i` slack of row `i`.
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    reflected: Vec<bool>,
}

impl Tableau {
    fn new(lp: &LinearProgram) -> Result<Self> {
        let cols = lp.cols();
        if lp.matrix.len() != lp.rows() * cols || lp.upper.len() != cols {
            return Err(Error::InvalidArgument("inconsistent linear program dimensions".into()));
        }
        let mut reflected = vec![false; cols];
        for j in 0..cols {
            if lp.cost[j] < 0.0 {
                if !lp.upper[j].is_finite() {
                    return Err(Error::InvalidArgument(format!(
                        "column {j} has negative cost and no finite upper bound"
                    )));
                }
                reflected[j] = true;
            }
        }
        let bounded: Vec<usize> = (0..cols).filter(|&j| lp.upper[j].is_finite()).collect();
        let rows = lp.rows() + bounded.len();

        let mut t = Vec::with_capacity(rows * cols);
        let mut beta = Vec::with_capacity(rows);
        for i in 0..lp.rows() {
            let row = lp.row(i);
            let mut rhs = lp.rhs[i];
            for j in 0..cols {
                if reflected[j] {
                    rhs -= row[j] * lp.upper[j];
                    t.push(-row[j]);
                } else {
                    t.push(row[j]);
                }
            }
            beta.push(rhs);
        }
        for &j in &bounded {
            t.extend((0..cols).map(|c| if c == j { 1.0 } else { 0.0 }));
            beta.push(lp.upper[j]);
        }
        let reduced = lp.cost.iter().map(|c| c.abs()).collect();

        Ok(Self {
            rows,
            cols,
            t,
            beta,
            reduced,
            basic: (cols..cols + rows).collect(),
            nonbasic: (0..cols).collect(),
            reflected,
        })
    }

    /// Most negative basic value, or the infeasible basic variable with the
    /// smallest id under Bland's rule.
    fn leaving_row(&self, tol: f64, bland: bool) -> Option<usize> {
        let candidates = (0..self.rows).filter(|&i| self.beta[i] < -tol);
        if bland {
            candidates.min_by_key(|&i| self.basic[i])
        } else {
            candidates.min_by(|&a, &b| {
                self.beta[a].total_cmp(&self.beta[b]).then(self.basic[a].cmp(&self.basic[b]))
            })
        }
    }

    /// Dual ratio test on row `r`; ties go to the smallest variable id.
    fn entering_col(&self, r: usize, pivot_tol: f64) -> Option<usize> {
        let row = &self.t[r * self.cols..(r + 1) * self.cols];
        let mut best: Option<(usize, f64)> = None;
        for (j, &a) in row.iter().enumerate() {
            if a >= -pivot_tol {
                continue;
            }
            let ratio = self.reduced[j].max(0.0) / -a;
            best = match best {
                None => Some((j, ratio)),
                Some((bj, br)) => {
                    let tie = (ratio - br).abs() <= 1e-12 * (1.0 + br.abs());
                    if ratio < br && !tie || tie && self.nonbasic[j] < self.nonbasic[bj] {
                        Some((j, ratio))
                    } else {
                        Some((bj, br))
                    }
                }
            };
        }
        best.map(|(j, _)| j)
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let n = self.cols;
        let p = self.t[r * n + s];
        let inv = 1.0 / p;

        let (before, rest) = self.t.split_at_mut(r * n);
        let (pivot_row, after) = rest.split_at_mut(n);
        for v in pivot_row.iter_mut() {
            *v *= inv;
        }
        pivot_row[s] = inv;
        self.beta[r] *= inv;
        let beta_r = self.beta[r];

        let update = |row: &mut [f64], beta: &mut f64| {
            let factor = row[s];
            if factor == 0.0 {
                return;
            }
            for (v, &pr) in row.iter_mut().zip(pivot_row.iter()) {
                *v -= factor * pr;
            }
            row[s] = -factor * inv;
            *beta -= factor * beta_r;
        };
        for (i, row) in before.chunks_exact_mut(n).enumerate() {
            update(row, &mut self.beta[i]);
        }
        for (i, row) in after.chunks_exact_mut(n).enumerate() {
            update(row, &mut self.beta[r + 1 + i]);
        }

        let ds = self.reduced[s];
        for (d, &pr) in self.reduced.iter_mut().zip(pivot_row.iter()) {
            *d -= ds * pr;
        }
        self.reduced[s] = -ds * inv;

        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[s]);
    }

    fn extract(&self, lp: &LinearProgram, tol: f64, iterations: usize, used_bland: bool) -> LpSolution {
        let mut shifted = vec![0.0; self.cols];
        let mut slack = vec![0.0; self.rows];
        for (i, &var) in self.basic.iter().enumerate() {
            if var < self.cols {
                shifted[var] = self.beta[i];
            } else {
                slack[var - self.cols] = self.beta[i];
            }
        }
        let values: Vec<f64> = (0..self.cols)
            .map(|j| if self.reflected[j] { lp.upper[j] - shifted[j] } else { shifted[j] })
            .collect();
        let objective = lp.cost.iter().zip(&values).map(|(c, w)| c * w).sum();
        let tight_rows = (0..lp.rows()).filter(|&i| slack[i] <= 10.0 * tol).collect();
        LpSolution { values, objective, tight_rows, iterations, used_bland }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(cost: &[f64], rows: &[&[f64]], rhs: &[f64], upper: &[f64]) -> LinearProgram {
        LinearProgram {
            cost: cost.to_vec(),
            matrix: rows.iter().flat_map(|r| r.iter().copied()).collect(),
            rhs: rhs.to_vec(),
            upper: upper.to_vec(),
        }
    }

    #[test]
    fn symmetric_two_constraint_toy() {
        // max t  s.t.  t <= 2 y1, t <= 2 y2, y1 + y2 = 1.
        let p = lp(
            &[-1.0, 0.0, 0.0],
            &[&[0.0, 1.0, 1.0], &[0.0, -1.0, -1.0], &[1.0, -2.0, 0.0], &[1.0, 0.0, -2.0]],
            &[1.0, -1.0, 0.0, 0.0],
            &[2.0, f64::INFINITY, f64::INFINITY],
        );
        let s = solve_lp(&p).unwrap();
        assert!((s.objective + 1.0).abs() < 1e-12);
        assert!((s.values[1] - 0.5).abs() < 1e-12 && (s.values[2] - 0.5).abs() < 1e-12);
        assert!(s.tight_rows.contains(&2) && s.tight_rows.contains(&3));
    }

    #[test]
    fn reports_infeasibility() {
        // w <= 1 and -w <= -2.
        let p = lp(&[1.0], &[&[1.0], &[-1.0]], &[1.0, -2.0], &[f64::INFINITY]);
        assert!(matches!(solve_lp(&p), Err(Error::Infeasible)));
    }

    #[test]
    fn rejects_start_without_dual_feasibility() {
        let p = lp(&[-1.0], &[&[1.0]], &[1.0], &[f64::INFINITY]);
        assert!(matches!(solve_lp(&p), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn small_textbook_problem() {
        // min 2a + 3b  s.t.  a + b >= 4, a + 3b >= 6, a <= 10 -> (3, 1), cost 9.
        let p = lp(
            &[2.0, 3.0],
            &[&[-1.0, -1.0], &[-1.0, -3.0]],
            &[-4.0, -6.0],
            &[10.0, f64::INFINITY],
        );
        let s = solve_lp(&p).unwrap();
        assert!((s.objective - 9.0).abs() < 1e-12, "{s:?}");
        assert!((s.values[0] - 3.0).abs() < 1e-12 && (s.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn iteration_limit_is_reported() {
        let p = lp(
            &[2.0, 3.0],
            &[&[-1.0, -1.0], &[-1.0, -3.0]],
            &[-4.0, -6.0],
            &[f64::INFINITY, f64::INFINITY],
        );
        let opts = SimplexOptions { max_iterations: Some(0), ..Default::default() };
        assert!(matches!(solve_lp_with(&p, &opts), Err(Error::IterationLimit(0))));
    }
}
