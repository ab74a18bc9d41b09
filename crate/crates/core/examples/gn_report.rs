//! The symmetric join family: formula against engine, and the typical rank range.

use mcrank::gcr::GcrOptions;
use mcrank::typical::{gn_report, gn_sgcr_formula};

fn main() -> mcrank::Result<()> {
    let opts = GcrOptions::default();
    for n in 1..=6 {
        let r = gn_report(n, &opts, 3)?;
        println!(
            "n = {n}: formula {} engine {} typical ranks {:?} ({} vs {}), witnesses {} {}",
            gn_sgcr_formula(n),
            r.engine_sgcr,
            r.typical_ranks,
            r.typical_count,
            r.formula_count,
            r.knk1_witness.passed,
            r.gn_witness.passed
        );
    }
    Ok(())
}
