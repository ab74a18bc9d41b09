//! Exact rank over F_p and random points on the rank-r variety.

use mcrank::ffmat::{random_ranked_point, rank_ff, FpMatrix, PrimeField};

fn main() -> mcrank::Result<()> {
    let field = PrimeField::new(7)?;
    let a = FpMatrix::from_i64_rows(field, &[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, -1]])?;
    println!("rank over F_7: {}, det {}", rank_ff(&a), a.determinant()?);

    let field = PrimeField::default();
    let point = random_ranked_point(field, 5, 6, 3, 42)?;
    println!("random rank-3 point: rank {}", rank_ff(&point.matrix));
    Ok(())
}
