//! Exact minimum-rank completion on a chordal bipartite pattern, over F_p and the reals.

use mcrank::complete::{chordal_complete_fp, chordal_complete_real, PartialMatrix};
use mcrank::ffmat::PrimeField;
use mcrank::pattern::{is_chordal_bipartite, triangular, Chordality};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> mcrank::Result<()> {
    let g = triangular(6);
    if let Chordality::Chordal(trace) = is_chordal_bipartite(&g) {
        println!("T_6 is chordal bipartite, {} elimination steps", trace.steps.len());
    }

    let field = PrimeField::new(1_000_003)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = PartialMatrix::from_fn(g.clone(), |_, _| field.random(&mut rng));
    let c = chordal_complete_fp(&x, field, 0)?;
    println!("F_p: rank {}, reproduces data {:?}", c.rank, c.exact_match);

    let y = PartialMatrix::from_fn(g, |_, _| rng.random_range(-1.0..1.0));
    let c = chordal_complete_real(&y, 0)?;
    println!("reals: rank {}, max deviation {:e}", c.rank, c.max_deviation.unwrap());

    let bad = PartialMatrix::from_entries(
        3,
        3,
        [(0, 0, 1.0), (0, 1, 1.0), (0, 2, 1.0), (1, 0, 1.0), (1, 1, 1.0), (1, 2, 2.0), (2, 0, 0.0), (2, 1, 1.0)],
    )?;
    match chordal_complete_real(&bad, 0) {
        Ok(c) => println!("non-generic data: rank {}", c.rank),
        Err(e) => println!("non-generic data: {e}"),
    }
    Ok(())
}
