//! Target distances and candidate norms from the lattice packing bound.

use sforge::default_table;

pub fn main() -> sforge::Result<()> {
    let table = default_table();
    for k in [2usize, 3, 8, 24] {
        let entry = table.entry(k).expect("default entry");
        println!("k = {k:>2}: Λ = {:.6} ({})", entry.lambda, entry.source);
    }
    println!();
    println!("{:>7} {:>3} {:>8} {:>9} {:>10}", "M", "k", "d_check", "W", "M back");
    for (m, k) in [(10u64, 2usize), (20, 2), (1000, 2), (20, 3), (64, 24), (1 << 19, 24)] {
        let info = table.bound_info(m, k)?;
        let back = table.max_points_bound(info.d_check, k)?;
        println!("{m:>7} {k:>3} {:>8.4} {:>9.4} {back:>10.2}", info.d_check, info.w);
    }
    Ok(())
}
