//! Generator search: the shell-constrained random heuristic and the
//! isometry-reduced exhaustive baseline.
//!
//! # Candidate stream
//!
//! The heuristic samples exponent vectors near the sphere of radius `W` in
//! lattice space. Draws come from `ChaCha8Rng::seed_from_u64(seed)` and are
//! consumed in a fixed order: for each candidate, one uniform integer draw
//! (`Rng::gen_range(lo..=hi)`) per coordinate `v_2 .. v_{k-1}`; `v_1 = 1` and
//! `v_k` are not drawn. A failed attempt (empty range) restarts the candidate
//! without rewinding the generator. Candidates are folded modulo `M`,
//! deduplicated by canonical form, and the first `Q` distinct classes are
//! evaluated. Runs with the same seed therefore share a prefix of classes,
//! which makes the best distance nondecreasing in `Q`.

use std::cmp::Ordering;
use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{euler_phi, fold, gcd_with};
use crate::bounds::CenterDensityTable;
use crate::codes::{canonical_exponents, half_units, is_canonical, CyclicGenerator};
use crate::error::{Error, Result};
use crate::ivp::{solve_ivp, IvpSolution};

/// Attempts per candidate before the sampler gives up on the shell.
const SAMPLER_RETRIES: usize = 64;

/// Default cap on enumerated cases for [`exhaustive_search`].
pub const EXHAUSTIVE_LIMIT: f64 = 1e7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Number of points `M`.
    pub order: u64,
    /// Even ambient dimension `n = 2k`.
    pub dim: usize,
    /// Number of distinct candidates `Q`.
    pub candidates: usize,
    pub seed: u64,
    /// Evaluation threads; 0 uses the global rayon pool.
    pub workers: usize,
    /// Total sampler draws allowed; `None` means `64 Q + 1024`.
    pub max_draws: Option<usize>,
}

impl SearchConfig {
    pub fn new(order: u64, dim: usize, candidates: usize, seed: u64) -> Self {
        Self { order, dim, candidates, seed, workers: 0, max_draws: None }
    }

    fn validate(&self) -> Result<usize> {
        if self.candidates == 0 {
            return Err(Error::InvalidArgument("Q must be at least 1".into()));
        }
        if self.dim == 0 || !self.dim.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("dimension must be even and positive, got {}", self.dim)));
        }
        if self.order < 2 {
            return Err(Error::InvalidArgument(format!("search needs M >= 2, got {}", self.order)));
        }
        Ok(self.dim / 2)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub order: u64,
    pub dim: usize,
    /// Exponent vector of the winning generator, as evaluated.
    pub best_b: Vec<u64>,
    /// Canonical representative of `best_b`.
    pub best_canonical: Vec<u64>,
    pub best_d: f64,
    pub best_x: Vec<f64>,
    pub best_y: Vec<f64>,
    /// Distinct candidates whose IVP was solved.
    pub evaluated: usize,
    pub duplicates_skipped: usize,
    pub d_check: f64,
    /// `best_d / d_check`.
    pub ratio: f64,
}

/// Draws one shell candidate `v` with `v_1 = 1`, nondecreasing entries and
/// `v_k = round(sqrt(W^2 - v_1^2 - ... - v_{k-1}^2))`.
pub fn sample_candidate<R: Rng + ?Sized>(w: f64, k: usize, rng: &mut R) -> Result<Vec<u64>> {
    if k < 2 || w < 1.0 {
        return Err(Error::ShellTooSmall { w, k });
    }
    let w2 = w * w;
    'attempt: for _ in 0..SAMPLER_RETRIES {
        let mut v = Vec::with_capacity(k);
        v.push(1u64);
        let mut sum_sq = 1.0;
        for i in 1..k - 1 {
            // i coordinates are fixed; the remaining budget is split k + 1 - i ways.
            let hi = ((w2 - sum_sq) / (k + 1 - i) as f64).max(0.0).sqrt().floor() as u64;
            let lo = v[i - 1];
            if hi < lo {
                continue 'attempt;
            }
            let next = rng.gen_range(lo..=hi);
            sum_sq += (next * next) as f64;
            v.push(next);
        }
        let rest = w2 - sum_sq;
        if rest < 0.0 {
            continue;
        }
        let last = rest.sqrt().round() as u64;
        if last < v[k - 2] {
            continue;
        }
        v.push(last);
        return Ok(v);
    }
    Err(Error::ShellTooSmall { w, k })
}

/// Evaluated candidate, ordered by distance then by reversed canonical form.
#[derive(Debug, Clone)]
struct Scored {
    b: Vec<u64>,
    canonical: Vec<u64>,
    solution: IvpSolution,
}

fn better(a: &Scored, b: &Scored) -> Ordering {
    a.solution
        .d
        .total_cmp(&b.solution.d)
        .then_with(|| b.canonical.cmp(&a.canonical))
}

fn pick_best(items: impl Iterator<Item = Scored>) -> Option<Scored> {
    items.max_by(better)
}

fn evaluate(order: u64, dim: usize, b: Vec<u64>, canonical: Vec<u64>) -> Result<Scored> {
    let g = CyclicGenerator::new(order, dim, b.clone())?;
    let solution = solve_ivp(&g)?;
    Ok(Scored { b, canonical, solution })
}

fn with_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(job))
}

/// Distinct candidate classes of the seeded stream, in stream order.
pub fn candidate_stream(cfg: &SearchConfig, w: f64) -> Result<(Vec<(Vec<u64>, Vec<u64>)>, usize)> {
    let k = cfg.validate()?;
    let m = cfg.order;
    if k == 1 {
        return Ok((vec![(vec![1], vec![1])], 0));
    }
    let budget = cfg.max_draws.unwrap_or(64 * cfg.candidates + 1024);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen_raw: HashSet<Vec<u64>> = HashSet::new();
    let mut seen_class: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::with_capacity(cfg.candidates);
    let mut duplicates = 0usize;

    for _ in 0..budget {
        if out.len() == cfg.candidates {
            break;
        }
        let v = sample_candidate(w, k, &mut rng)?;
        let folded: Vec<u64> = v.iter().map(|&c| fold(c, m)).collect();
        let mut key = folded.clone();
        key.sort_unstable();
        if !seen_raw.insert(key) {
            duplicates += 1;
            continue;
        }
        let canonical = canonical_exponents(&folded, m);
        if !seen_class.insert(canonical.clone()) {
            duplicates += 1;
            continue;
        }
        out.push((folded, canonical));
    }
    Ok((out, duplicates))
}

/// Shell-constrained random search for a good generator of order `M` in `R^n`.
pub fn heuristic_search(cfg: &SearchConfig, table: &CenterDensityTable) -> Result<SearchResult> {
    let k = cfg.validate()?;
    let bound = table.bound_info(cfg.order, k)?;
    let (candidates, duplicates) = candidate_stream(cfg, bound.w)?;
    if candidates.is_empty() {
        return Err(Error::NoCandidates);
    }

    let (order, dim) = (cfg.order, cfg.dim);
    let scored: Vec<Result<Scored>> = with_pool(cfg.workers, || {
        candidates
            .into_par_iter()
            .map(|(b, c)| evaluate(order, dim, b, c))
            .collect()
    })?;
    let scored: Vec<Scored> = scored.into_iter().collect::<Result<_>>()?;
    let evaluated = scored.len();
    let best = pick_best(scored.into_iter()).ok_or(Error::NoCandidates)?;
    Ok(finish(order, dim, best, evaluated, duplicates, bound.d_check))
}

fn finish(order: u64, dim: usize, best: Scored, evaluated: usize, duplicates: usize, d_check: f64) -> SearchResult {
    SearchResult {
        order,
        dim,
        best_d: best.solution.d,
        ratio: best.solution.d / d_check,
        best_x: best.solution.x,
        best_y: best.solution.y,
        best_b: best.b,
        best_canonical: best.canonical,
        evaluated,
        duplicates_skipped: duplicates,
        d_check,
    }
}

/// `M^n / (2^n φ(M))`.
pub fn estimate_search_space(order: u64, dim: usize) -> f64 {
    (order as f64 / 2.0).powi(dim as i32) / euler_phi(order) as f64
}

/// Number of nondecreasing tuples in `[1, M/2]^k`, the cases the exhaustive
/// search walks before the canonical-form filter.
pub fn reduced_case_count(order: u64, k: usize) -> f64 {
    let half = (order / 2) as f64;
    (0..k).fold(1.0, |acc, i| acc * (half + i as f64) / (i as f64 + 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExhaustiveConfig {
    pub order: u64,
    pub dim: usize,
    /// Skip isometric duplicates (sorted tuples that are not canonical).
    /// With `false` the whole box `[1, M/2]^k` is solved.
    pub dedup: bool,
    pub limit: f64,
    pub workers: usize,
}

impl ExhaustiveConfig {
    pub fn new(order: u64, dim: usize) -> Self {
        Self { order, dim, dedup: true, limit: EXHAUSTIVE_LIMIT, workers: 0 }
    }
}

/// Best cyclic code of order `M` in `R^n` by enumerating every exponent
/// vector up to isometry.
pub fn exhaustive_search(order: u64, dim: usize, table: &CenterDensityTable) -> Result<SearchResult> {
    exhaustive_search_with(&ExhaustiveConfig::new(order, dim), table)
}

pub fn exhaustive_search_with(cfg: &ExhaustiveConfig, table: &CenterDensityTable) -> Result<SearchResult> {
    if cfg.dim == 0 || !cfg.dim.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("dimension must be even and positive, got {}", cfg.dim)));
    }
    if cfg.order < 2 {
        return Err(Error::InvalidArgument(format!("search needs M >= 2, got {}", cfg.order)));
    }
    let k = cfg.dim / 2;
    let m = cfg.order;
    let half = m / 2;
    let count = if cfg.dedup { reduced_case_count(m, k) } else { (half as f64).powi(k as i32) };
    if count > cfg.limit {
        return Err(Error::SearchSpaceTooLarge {
            count,
            estimate: estimate_search_space(m, cfg.dim),
            limit: cfg.limit,
        });
    }
    let d_check = table.target_distance(m, k)?;
    let unit_list = half_units(m);

    const CHUNK: usize = 1 << 14;
    let mut tuples = TupleWalker::new(k, half, cfg.dedup);
    let mut best: Option<Scored> = None;
    let mut evaluated = 0usize;
    let mut skipped = 0usize;
    loop {
        let chunk: Vec<Vec<u64>> = tuples.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let results: Vec<Case> = with_pool(cfg.workers, || {
            chunk
                .into_par_iter()
                .map(|b| {
                    if gcd_with(&b, m) != 1 {
                        return Case::NotGenerator;
                    }
                    if cfg.dedup && !is_canonical(&b, m, &unit_list) {
                        return Case::Isometric;
                    }
                    let canonical = if cfg.dedup { b.clone() } else { canonical_exponents(&b, m) };
                    Case::Solved(evaluate(m, cfg.dim, b, canonical))
                })
                .collect()
        })?;
        for case in results {
            match case {
                Case::NotGenerator => {}
                Case::Isometric => skipped += 1,
                Case::Solved(r) => {
                    evaluated += 1;
                    best = pick_best(best.into_iter().chain(std::iter::once(r?)));
                }
            }
        }
    }
    let best = best.ok_or(Error::NoCandidates)?;
    Ok(finish(m, cfg.dim, best, evaluated, skipped, d_check))
}

enum Case {
    NotGenerator,
    Isometric,
    Solved(Result<Scored>),
}

/// Odometer over `[1, max]^k`, optionally restricted to nondecreasing tuples.
struct TupleWalker {
    current: Option<Vec<u64>>,
    max: u64,
    sorted: bool,
}

impl TupleWalker {
    fn new(k: usize, max: u64, sorted: bool) -> Self {
        let current = (max >= 1).then(|| vec![1; k]);
        Self { current, max, sorted }
    }
}

impl Iterator for TupleWalker {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            if cur[pos] < self.max {
                cur[pos] += 1;
                let reset = if self.sorted { cur[pos] } else { 1 };
                cur[pos + 1..].iter_mut().for_each(|c| *c = reset);
                break;
            }
        }
        Some(out)
    }
}
