//! Numerical low-rank fitting of a partial matrix at several ranks.

use mcrank::complete::{lowrank_profile, FitOptions, PartialMatrix};
use mcrank::pattern::cube;

fn main() -> mcrank::Result<()> {
    let a = [
        (0, 1, -1.5),
        (0, 2, -1.0),
        (0, 3, 1.0),
        (1, 0, -5.0),
        (1, 2, 1.0),
        (1, 3, -2.0),
        (2, 0, -2.0),
        (2, 1, 1.0),
        (2, 3, -1.0),
        (3, 0, 1.0),
        (3, 1, -1.0),
        (3, 2, -1.0),
    ];
    let x = PartialMatrix::from_entries(4, 4, a)?;
    assert_eq!(x.pattern(), &cube());
    let opts = FitOptions {
        restarts: 50,
        ..FitOptions::default()
    };
    for fit in lowrank_profile(&x, 1..=3, &opts)? {
        println!("rank {}: residual {:.3e}, completable {}", fit.rank, fit.residual, fit.completable);
    }
    Ok(())
}
