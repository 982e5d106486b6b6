//! Exact optima over all cyclic generators for small `(M, n)`, next to the
//! best heuristic result.

use sforge::reference::N4_RESULTS;
use sforge::{default_table, exhaustive_search, heuristic_search, SearchConfig};

pub fn main() -> sforge::Result<()> {
    let table = default_table();
    println!("{:>5} {:>9} {:>9} {:>9} {:>12}", "M", "bound", "optimum", "heuristic", "optimal b");
    for &(m, _, _, _) in N4_RESULTS.iter().take(5) {
        let best = exhaustive_search(m, 4, table)?;
        let heur = heuristic_search(&SearchConfig::new(m, 4, 256, 0), table)?;
        println!(
            "{m:>5} {:>9.4} {:>9.4} {:>9.4} {:>12}",
            best.d_check,
            best.best_d,
            heur.best_d,
            format!("{:?}", best.best_canonical)
        );
    }
    Ok(())
}
