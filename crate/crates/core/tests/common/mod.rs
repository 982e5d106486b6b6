//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use sforge::arith::gcd_with;
use sforge::codes::DistanceProfile;
use sforge::CyclicGenerator;

/// Random generator with `M <= max_order` and `k <= max_blocks`; odd `n`
/// only when `odd` is set.
pub fn random_generator<R: Rng>(rng: &mut R, max_order: u64, max_blocks: usize, odd: bool) -> CyclicGenerator {
    loop {
        let m = rng.gen_range(3..=max_order);
        let k = rng.gen_range(1..=max_blocks);
        let n = if odd && rng.gen_bool(0.5) { 2 * k + 1 } else { 2 * k };
        let b: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=m)).collect();
        if gcd_with(&b, m) == 1 {
            return CyclicGenerator::new(m, n, b).unwrap();
        }
    }
}

/// Random unit vector (normalized cube sample; not uniform on the sphere).
pub fn random_unit<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Calls `visit` on every point `c / steps` of the simplex grid in `dim`
/// coordinates, where `c` are nonnegative integers summing to `steps`.
fn for_each_grid_point(dim: usize, steps: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(prefix: &mut Vec<usize>, dim: usize, left: usize, visit: &mut dyn FnMut(&[usize])) {
        if prefix.len() + 1 == dim {
            prefix.push(left);
            visit(prefix);
            prefix.pop();
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            rec(prefix, dim, left - c, visit);
            prefix.pop();
        }
    }
    rec(&mut Vec::with_capacity(dim), dim, steps, visit);
}

/// `max min_i f_i(y)` over the simplex grid of step `1/steps`, with the maximizer.
pub fn grid_optimum(profile: &DistanceProfile, steps: usize) -> (f64, Vec<f64>) {
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for_each_grid_point(profile.cols(), steps, &mut |c| {
        let y: Vec<f64> = c.iter().map(|&v| v as f64 / steps as f64).collect();
        let t = profile.min_value(&y);
        if t > best.0 {
            best = (t, y);
        }
    });
    best
}

/// Grid search refined around the incumbent: each level shrinks the step
/// by 5 and scans `radius` steps in every free direction.
pub fn refined_grid_optimum(profile: &DistanceProfile, steps: usize, levels: usize, radius: i64) -> f64 {
    let (mut best_t, mut best_y) = grid_optimum(profile, steps);
    let free = profile.cols().saturating_sub(1);
    let mut h = 1.0 / steps as f64;
    for _ in 0..levels {
        h /= 5.0;
        let center = best_y.clone();
        let mut offsets = vec![-radius; free];
        loop {
            let mut y = center.clone();
            for (j, &o) in offsets.iter().enumerate() {
                y[j] += o as f64 * h;
            }
            if free > 0 {
                y[free] = 1.0 - y[..free].iter().sum::<f64>();
            }
            if y.iter().all(|&v| v >= 0.0) {
                let t = profile.min_value(&y);
                if t > best_t {
                    best_t = t;
                    best_y = y;
                }
            }
            // Odometer over offsets.
            let mut j = 0;
            while j < free {
                offsets[j] += 1;
                if offsets[j] <= radius {
                    break;
                }
                offsets[j] = -radius;
                j += 1;
            }
            if j == free {
                break;
            }
        }
    }
    best_t
}

/// Exact LP optimum by enumerating vertices of `{(t, y): t <= f_i(y), y >= 0, sum y = 1}`.
pub fn vertex_optimum(profile: &DistanceProfile) -> f64 {
    let c = profile.cols();
    // Constraint rows over (t, y): f-rows (1, -m_i) and bounds (0, e_j).
    let mut rows: Vec<Vec<f64>> = profile.iter_rows().map(|r| std::iter::once(1.0).chain(r.iter().map(|m| -m)).collect()).collect();
    for j in 0..c {
        let mut r = vec![0.0; c + 1];
        r[j + 1] = 1.0;
        rows.push(r);
    }
    let mut best = f64::NEG_INFINITY;
    let mut pick = Vec::with_capacity(c);
    choose(rows.len(), c, 0, &mut pick, &mut |idx| {
        let mut a = nalgebra::DMatrix::zeros(c + 1, c + 1);
        let mut rhs = nalgebra::DVector::zeros(c + 1);
        for j in 0..c {
            a[(0, j + 1)] = 1.0;
        }
        rhs[0] = 1.0;
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..=c {
                a[(r + 1, j)] = rows[i][j];
            }
        }
        let Some(w) = a.lu().solve(&rhs) else { return };
        let y: Vec<f64> = w.iter().skip(1).copied().collect();
        if y.iter().any(|&v| v < -1e-12) || !w.iter().all(|v| v.is_finite()) {
            return;
        }
        let t = profile.min_value(&y);
        if (t - w[0]).abs() < 1e-9 {
            best = best.max(t);
        }
    });
    best
}

fn choose(n: usize, k: usize, start: usize, pick: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if pick.len() == k {
        visit(pick);
        return;
    }
    for i in start..n {
        pick.push(i);
        choose(n, k, i + 1, pick, visit);
        pick.pop();
    }
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let dist = |p: &[f64], q: &[f64]| p.iter().zip(q).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let one_way = |a: &[Vec<f64>], b: &[Vec<f64>]| {
        a.iter().map(|p| b.iter().map(|q| dist(p, q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}
