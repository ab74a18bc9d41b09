//! Scalar backends for the elimination-based completion: exact F_p and f64.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::ffmat::{pinv_solve, FpMatrix, PrimeField, DEFAULT_RANK_TOL};

/// The linear algebra needed to extend a matrix by one line.
pub trait Backend {
    type Scalar: Copy + std::fmt::Debug;

    fn zero(&self) -> Self::Scalar;
    fn add(&self, a: Self::Scalar, b: Self::Scalar) -> Self::Scalar;
    fn mul(&self, a: Self::Scalar, b: Self::Scalar) -> Self::Scalar;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Scalar;
    /// Rank of a row-major `rows x cols` matrix.
    fn rank(&self, rows: usize, cols: usize, a: &[Self::Scalar]) -> usize;
    /// A particular solution of `a x = b` plus a kernel basis, or `None` when inconsistent.
    fn solve(&self, rows: usize, cols: usize, a: &[Self::Scalar], b: &[Self::Scalar]) -> Option<Solution<Self::Scalar>>;

    fn dot(&self, x: &[Self::Scalar], y: &[Self::Scalar]) -> Self::Scalar {
        x.iter().zip(y).fold(self.zero(), |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }
}

#[derive(Clone, Debug)]
pub struct Solution<S> {
    pub particular: Vec<S>,
    pub kernel: Vec<Vec<S>>,
}

#[derive(Clone, Copy, Debug)]
pub struct FpBackend {
    pub field: PrimeField,
}

impl Backend for FpBackend {
    type Scalar = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        self.field.add(a, b)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        self.field.mul(a, b)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.field.random(rng)
    }

    fn rank(&self, rows: usize, cols: usize, a: &[u64]) -> usize {
        FpMatrix::from_vec(self.field, rows, cols, a.to_vec()).expect("shape checked by caller").rank()
    }

    fn solve(&self, rows: usize, cols: usize, a: &[u64], b: &[u64]) -> Option<Solution<u64>> {
        let m = FpMatrix::from_vec(self.field, rows, cols, a.to_vec()).expect("shape checked by caller");
        let particular = m.solve(b).ok()?;
        Some(Solution {
            particular,
            kernel: m.nullspace(),
        })
    }
}

/// Floating backend; ranks and consistency use a relative singular-value threshold.
#[derive(Clone, Copy, Debug)]
pub struct RealBackend {
    pub tol: f64,
}

impl Default for RealBackend {
    fn default() -> Self {
        Self { tol: DEFAULT_RANK_TOL }
    }
}

impl RealBackend {
    fn rank_of(&self, m: &DMatrix<f64>) -> usize {
        if m.is_empty() {
            return 0;
        }
        let s = m.singular_values();
        let max = s.iter().copied().fold(0.0, f64::max);
        if max == 0.0 {
            return 0;
        }
        s.iter().filter(|&&x| x > self.tol * max).count()
    }
}

impl Backend for RealBackend {
    type Scalar = f64;

    fn zero(&self) -> f64 {
        0.0
    }

    fn add(&self, a: f64, b: f64) -> f64 {
        a + b
    }

    fn mul(&self, a: f64, b: f64) -> f64 {
        a * b
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        StandardNormal.sample(rng)
    }

    fn rank(&self, rows: usize, cols: usize, a: &[f64]) -> usize {
        self.rank_of(&DMatrix::from_row_slice(rows, cols, a))
    }

    fn solve(&self, rows: usize, cols: usize, a: &[f64], b: &[f64]) -> Option<Solution<f64>> {
        let m = DMatrix::from_row_slice(rows, cols, a);
        let rhs = DVector::from_column_slice(b);
        let augmented = DMatrix::from_fn(rows, cols + 1, |i, j| if j < cols { m[(i, j)] } else { b[i] });
        if self.rank_of(&augmented) > self.rank_of(&m) {
            return None;
        }
        if cols == 0 {
            return Some(Solution {
                particular: vec![],
                kernel: vec![],
            });
        }
        let particular = if rows == 0 {
            DVector::zeros(cols)
        } else {
            pinv_solve(&m, &rhs, self.tol)
        };
        // pad to a square-or-taller matrix so the SVD returns a full right basis
        let tall = DMatrix::from_fn(rows.max(cols), cols, |i, j| if i < rows { m[(i, j)] } else { 0.0 });
        let svd = tall.svd(false, true);
        let vt = svd.v_t.expect("v_t requested");
        let max = svd.singular_values.iter().copied().fold(0.0, f64::max);
        let kernel = svd
            .singular_values
            .iter()
            .enumerate()
            .filter(|&(_, &s)| max == 0.0 || s <= self.tol * max)
            .map(|(k, _)| vt.row(k).iter().copied().collect())
            .collect();
        Some(Solution {
            particular: particular.iter().copied().collect(),
            kernel,
        })
    }
}
