//! Building a verified catalog of best codes in a JSON-lines file.

use sforge::catalog::{append_record, read_records};
use sforge::{default_table, exhaustive_search, heuristic_search, Catalog, CodeRecord, Method, SearchConfig};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("sforge-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("codes.jsonl");
    let table = default_table();

    for m in [20u64, 30] {
        let heur = heuristic_search(&SearchConfig::new(m, 4, 64, 5), table)?;
        append_record(&path, &CodeRecord::from_search(&heur, 64, 5, Method::Heuristic))?;
        let exact = exhaustive_search(m, 4, table)?;
        append_record(&path, &CodeRecord::from_search(&exact, 0, 0, Method::Exhaustive))?;
    }

    // A tampered record is refused on load.
    let mut forged = read_records(&path)?.remove(0);
    forged.d += 0.01;
    println!("forged record: {}", forged.verify().unwrap_err());

    let catalog = Catalog::load(&path)?;
    for r in catalog.records() {
        println!("M = {:>3}, n = {}: b = {:?}, d = {:.4} ({:?})", r.order, r.dim, r.b, r.d, r.method);
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
