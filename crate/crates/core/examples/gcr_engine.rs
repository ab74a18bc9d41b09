//! Generic completion rank of a few patterns, with the per-rank tangent checks.

use mcrank::gcr::{gcr, sgcr, GcrOptions};
use mcrank::pattern::{circulant, cube, join_family, triangular};

fn main() -> mcrank::Result<()> {
    let opts = GcrOptions::default();
    for (name, g) in [("T_7", triangular(7)), ("G(8,6)", circulant(8, 6)), ("cube", cube())] {
        let report = gcr(&g, &opts)?;
        println!("{name}: gcr = {}", report.gcr);
        for check in &report.tangent {
            println!(
                "  r = {}: image dim {} of {} entries, surjective {}, unanimous {}",
                check.r,
                check.dim_image,
                g.num_edges(),
                check.surjective,
                check.unanimous
            );
        }
    }

    let g4 = join_family(4);
    println!("symmetric G_4: sgcr = {}", sgcr(&g4, &opts)?.gcr);
    Ok(())
}
