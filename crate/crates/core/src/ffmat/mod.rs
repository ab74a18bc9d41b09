//! Exact linear algebra over a prime field, plus the floating-point rank
//! cross-check.

mod field;
mod matrix;
mod ranked;
mod real;

pub use field::{is_prime, PrimeField, MERSENNE_61};
pub use matrix::{rank_ff, FpMatrix};
pub use ranked::{
    random_ranked_point, random_ranked_point_with, random_sym_ranked_point, random_sym_ranked_point_with,
    RankedPoint, SymRankedPoint, MAX_REDRAWS,
};
pub use real::{rank_float, RealMatrix, DEFAULT_RANK_TOL};
pub(crate) use real::pinv_solve;
