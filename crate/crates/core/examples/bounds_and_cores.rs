//! Lower and upper bounds around the generic completion rank.

use mcrank::gcr::{gcr, GcrOptions};
use mcrank::pattern::{circulant, first_empty_core, k_core, max_biclique, DEFAULT_BICLIQUE_BUDGET};

fn main() -> mcrank::Result<()> {
    let g = circulant(9, 6);
    let b = max_biclique(&g, false, DEFAULT_BICLIQUE_BUDGET)?;
    println!("largest biclique: {} (rows {:?}, cols {:?})", b.size, b.rows, b.cols);

    let empty_at = first_empty_core(&g);
    for k in 1..=empty_at {
        let core = k_core(&g, k);
        println!("{k}-core: {} rows, {} cols", core.rows.len(), core.cols.len());
    }

    let report = gcr(&g, &GcrOptions::default())?;
    let bounds = &report.bounds;
    println!("dimension bound  {}", bounds.dimension_bound);
    println!("biclique bound   {:?}", bounds.biclique_bound);
    println!("gcr              {}", report.gcr);
    println!("core bound       {:?}", bounds.core_mtr_bound);
    println!("2 gcr - 1        {:?}", bounds.mtr_upper);
    Ok(())
}
