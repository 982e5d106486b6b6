//! Plot data for the lattice of `(M, b) = (20, (1, 5))` with the sampling
//! arc, written as CSV to stdout.

use sforge::lattice::{plot_rows, write_plot_csv};
use sforge::{associated_lattice, default_table, solve_ivp, orbit, CyclicGenerator, TorusMap};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = CyclicGenerator::new(20, 4, vec![1, 5])?;
    let lat = associated_lattice(&g)?;
    let w = default_table().candidate_norm(20, 2)?;
    eprintln!("basis {:?}, index {}, W = {w:.4}", lat.basis(), lat.index());
    if let Some((v, n)) = lat.shortest_representative() {
        eprintln!("shortest lattice vector {v:?}, norm {n:.4}");
    }

    // The torus map carries the scaled lattice onto the orbit.
    let s = solve_ivp(&g)?;
    let radii: Vec<f64> = s.y.iter().map(|y| y.sqrt()).collect();
    let torus = TorusMap::new(radii.clone())?;
    let pts = sforge::lattice::scaled_lattice(&lat, &radii)?;
    let code = orbit(&g, &s.x);
    let gap = pts
        .iter()
        .zip(&code)
        .map(|(p, c)| torus.map(p).iter().zip(c).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    eprintln!("max |ψ(Λ(x)) - orbit| = {gap:.2e}");

    write_plot_csv(&plot_rows(&lat, Some(w), true)?, std::io::stdout())?;
    Ok(())
}
