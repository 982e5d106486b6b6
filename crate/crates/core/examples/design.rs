//! Heuristic design of a 4-dimensional code with 20 points.
//!
//! Run with `cargo run --example design -- [M] [Q] [seed]`.

use sforge::{default_table, heuristic_search, SearchConfig, SearchResult};

pub fn run(m: u64, q: usize, seed: u64) -> sforge::Result<SearchResult> {
    let result = heuristic_search(&SearchConfig::new(m, 4, q, seed), default_table())?;
    println!("M = {m}, Q = {q}, seed = {seed}");
    println!("b = {:?} (canonical {:?})", result.best_b, result.best_canonical);
    println!("d = {:.6}, target {:.6}, ratio {:.4}", result.best_d, result.d_check, result.ratio);
    println!("{} candidates evaluated, {} duplicates skipped", result.evaluated, result.duplicates_skipped);
    Ok(result)
}

#[allow(dead_code)]
fn main() -> sforge::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let m = args.next().unwrap_or(20);
    let q = args.next().unwrap_or(8) as usize;
    let seed = args.next().unwrap_or(1);
    run(m, q, seed).map(|_| ())
}
