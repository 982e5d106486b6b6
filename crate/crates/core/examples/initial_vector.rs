//! Optimal initial vector of a fixed generator, checked against the
//! pairwise distance of the materialized orbit.

use sforge::codes::distance_profile;
use sforge::{canonical_form, solve_ivp, CyclicGenerator};

pub fn main() -> sforge::Result<()> {
    let g = CyclicGenerator::new(20, 4, vec![1, 5])?;
    let s = solve_ivp(&g)?;
    println!("M = 20, b = (1, 5)");
    println!("y = {:?}", s.y);
    println!("x = {:?}", s.x);
    println!("d = {:.6} ({} simplex pivots)", s.d, s.iterations);
    println!("tight constraints i = {:?}", s.active_set);
    println!("pairwise check: {:.9}", s.direct_distance(&g)?);

    let profile = distance_profile(&g);
    for i in &s.active_set {
        println!("f_{i}(y) = {:.9}", profile.row(*i as usize).iter().zip(&s.y).map(|(m, y)| m * y).sum::<f64>());
    }

    // Isometric generators share their optimum.
    let a = CyclicGenerator::new(25, 4, vec![3, 11])?;
    let b = canonical_form(&a);
    println!(
        "(3, 11) -> {:?}: d = {:.9} vs {:.9}",
        b.exponents(),
        solve_ivp(&a)?.d,
        solve_ivp(&b)?.d
    );
    Ok(())
}
