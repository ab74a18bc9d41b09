//! Typical symmetric ranks of a full block plus one free diagonal entry.

use mcrank::complete::FitOptions;
use mcrank::typical::{knk1_boundary, knk1_cross_check, knk1_typical_sample};
use nalgebra::DMatrix;

fn main() -> mcrank::Result<()> {
    let a = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 3.0]);
    println!("A > 0, lambda = -1: rank {}", knk1_boundary(&a, -1.0)?);
    println!("A > 0, lambda = 1:  rank {}", knk1_boundary(&a, 1.0)?);

    for n in 1..=3 {
        let report = knk1_typical_sample(n, 4000, 11)?;
        let full = report.frequency(n + 1);
        println!("n = {n}: rank {} with frequency {full:.4}", n + 1);
    }

    let check = knk1_cross_check(2, 50, 11, &FitOptions::default())?;
    println!("optimizer agrees on {}/{} draws", check.agreed, check.checked);
    Ok(())
}
