//! Generic typical-rank scan on an arbitrary pattern with the optimizer.

use mcrank::complete::FitOptions;
use mcrank::gcr::{gcr, GcrOptions};
use mcrank::pattern::cycle;
use mcrank::typical::typical_scan;

fn main() -> mcrank::Result<()> {
    let g = cycle(3);
    let r = gcr(&g, &GcrOptions::default())?.gcr;
    let report = typical_scan(&g, r, 200, 9, &FitOptions::default())?;
    println!("C_6: gcr {r}");
    for class in &report.classes {
        println!("  rank {}: {:.3}", class.rank, class.frequency);
    }
    println!("  failed at rank {r}: {}", report.unclassified);
    Ok(())
}
