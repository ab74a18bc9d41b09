//! Monte Carlo estimate of the typical ranks of the cube pattern.

use mcrank::complete::{gaussian_partial, FitOptions};
use mcrank::pattern::cube;
use mcrank::typical::{cube_discriminants, cube_typical_sample, trial_rng};

fn main() -> mcrank::Result<()> {
    let x = gaussian_partial(cube(), &mut trial_rng(5, 0));
    println!("discriminants of one draw: {:?}", cube_discriminants(&x)?);

    let report = cube_typical_sample(500, 5, &FitOptions::default())?;
    for class in &report.classes {
        println!(
            "rank {} ({:?}): {} of {} = {:.3}",
            class.rank, class.certificate, class.count, report.trials, class.frequency
        );
    }
    println!("unclassified: {}", report.unclassified);
    Ok(())
}
