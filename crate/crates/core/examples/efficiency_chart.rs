//! Efficiency-chart rows and bound ratios for a few designed codes.

use sforge::metrics::{chart_rows, ratio_series, write_csv};
use sforge::{default_table, heuristic_search, CodeRecord, Method, SearchConfig};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut records = Vec::new();
    for m in [16u64, 32, 64, 128, 256] {
        let cfg = SearchConfig::new(m, 6, 128, 3);
        let result = heuristic_search(&cfg, default_table())?;
        records.push(CodeRecord::from_search(&result, cfg.candidates, cfg.seed, Method::Heuristic));
    }
    write_csv(&chart_rows(&records)?, std::io::stdout())?;
    println!();
    write_csv(&ratio_series(&records)?, std::io::stdout())?;
    Ok(())
}
