//! Random matrices of prescribed rank with explicit kernel and cokernel bases.
//!
//! These are the base points of the tangent-space computations: a rank-`r`
//! point together with a basis `v_1..v_{n-r}` of its kernel and functionals
//! `c_1..c_{m-r}` cutting out its column span.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::PrimeField;
use super::matrix::FpMatrix;
use crate::error::{Error, Result};

/// Redraws allowed before a degenerate draw is reported.
pub const MAX_REDRAWS: usize = 8;

#[derive(Clone, Debug)]
pub struct RankedPoint {
    pub matrix: FpMatrix,
    pub rank: usize,
    /// Right kernel vectors, each of length `n`.
    pub kernel: Vec<Vec<u64>>,
    /// Left kernel functionals, each of length `m`.
    pub cokernel: Vec<Vec<u64>>,
}

impl RankedPoint {
    /// Checks `M v_j = 0`, `c_i M = 0`, the basis sizes and `rank(M) = r`.
    pub fn verify(&self) -> bool {
        let (m, n) = (self.matrix.rows(), self.matrix.cols());
        self.kernel.len() == n - self.rank
            && self.cokernel.len() == m - self.rank
            && self.matrix.rank() == self.rank
            && self
                .kernel
                .iter()
                .all(|v| self.matrix.mul_vec(v).iter().all(|&x| x == 0))
            && self
                .cokernel
                .iter()
                .all(|c| self.matrix.vec_mul(c).iter().all(|&x| x == 0))
            && independent(self.matrix.field(), &self.kernel)
            && independent(self.matrix.field(), &self.cokernel)
    }
}

#[derive(Clone, Debug)]
pub struct SymRankedPoint {
    pub matrix: FpMatrix,
    pub rank: usize,
    pub kernel: Vec<Vec<u64>>,
}

impl SymRankedPoint {
    pub fn verify(&self) -> bool {
        let n = self.matrix.rows();
        self.matrix == self.matrix.transpose()
            && self.kernel.len() == n - self.rank
            && self.matrix.rank() == self.rank
            && self
                .kernel
                .iter()
                .all(|v| self.matrix.mul_vec(v).iter().all(|&x| x == 0))
            && independent(self.matrix.field(), &self.kernel)
    }
}

fn independent(field: PrimeField, vectors: &[Vec<u64>]) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let len = vectors[0].len();
    let m = FpMatrix::from_fn(field, vectors.len(), len, |i, j| vectors[i][j]);
    m.rank() == vectors.len()
}

fn check_shape(m: usize, n: usize, r: usize) -> Result<()> {
    if r > m.min(n) {
        return Err(Error::ShapeMismatch(format!("rank {r} exceeds min({m}, {n})")));
    }
    Ok(())
}

/// Random `m x n` matrix of rank exactly `r` as a product of random factors.
pub fn random_ranked_point(field: PrimeField, m: usize, n: usize, r: usize, seed: u64) -> Result<RankedPoint> {
    random_ranked_point_with(field, m, n, r, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_ranked_point_with(
    field: PrimeField,
    m: usize,
    n: usize,
    r: usize,
    rng: &mut ChaCha8Rng,
) -> Result<RankedPoint> {
    check_shape(m, n, r)?;
    for _ in 0..MAX_REDRAWS {
        let left = FpMatrix::random(field, m, r, rng);
        let right = FpMatrix::random(field, r, n, rng);
        let matrix = left.mul(&right)?;
        let point = RankedPoint {
            kernel: matrix.nullspace(),
            cokernel: matrix.left_nullspace(),
            matrix,
            rank: r,
        };
        if point.verify() {
            return Ok(point);
        }
    }
    Err(Error::DegenerateDraw {
        attempts: MAX_REDRAWS,
    })
}

/// Random symmetric `n x n` matrix `U D U^T` of rank exactly `r`.
pub fn random_sym_ranked_point(field: PrimeField, n: usize, r: usize, seed: u64) -> Result<SymRankedPoint> {
    random_sym_ranked_point_with(field, n, r, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_sym_ranked_point_with(
    field: PrimeField,
    n: usize,
    r: usize,
    rng: &mut ChaCha8Rng,
) -> Result<SymRankedPoint> {
    check_shape(n, n, r)?;
    for _ in 0..MAX_REDRAWS {
        let u = FpMatrix::random(field, n, r, rng);
        let d: Vec<u64> = (0..r).map(|_| field.random_nonzero(rng)).collect();
        let ud = FpMatrix::from_fn(field, n, r, |i, j| field.mul(u.get(i, j), d[j]));
        let matrix = ud.mul(&u.transpose())?;
        let point = SymRankedPoint {
            kernel: matrix.nullspace(),
            matrix,
            rank: r,
        };
        if point.verify() {
            return Ok(point);
        }
    }
    Err(Error::DegenerateDraw {
        attempts: MAX_REDRAWS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rank_point() {
        let f = PrimeField::default();
        let p = random_ranked_point(f, 3, 3, 0, 1).unwrap();
        assert!(p.matrix.data().iter().all(|&x| x == 0));
        assert_eq!(p.kernel.len(), 3);
        assert_eq!(p.cokernel.len(), 3);
    }

    #[test]
    fn full_rank_point() {
        let f = PrimeField::default();
        let p = random_ranked_point(f, 4, 4, 4, 2).unwrap();
        assert_eq!(p.matrix.rank(), 4);
        assert!(p.kernel.is_empty());
        assert!(p.cokernel.is_empty());
    }

    #[test]
    fn certificates_verify() {
        let f = PrimeField::default();
        for seed in 0..20 {
            let p = random_ranked_point(f, 5, 4, 2, seed).unwrap();
            assert!(p.verify());
            assert_eq!(p.kernel.len(), 2);
            assert_eq!(p.cokernel.len(), 3);
        }
    }

    #[test]
    fn symmetric_point() {
        let f = PrimeField::default();
        for r in 0..=5 {
            let p = random_sym_ranked_point(f, 5, r, 9).unwrap();
            assert!(p.verify());
            assert_eq!(p.kernel.len(), 5 - r);
        }
    }

    #[test]
    fn rank_above_shape_is_rejected() {
        let f = PrimeField::default();
        assert!(random_ranked_point(f, 2, 3, 3, 0).is_err());
    }

    #[test]
    fn tiny_field_exhausts_redraws() {
        // over F_3 a 6x6 rank-6 product of random factors is singular often enough
        // that some seed eventually fails; every returned point must still verify
        let f = PrimeField::new(3).unwrap();
        for seed in 0..50 {
            match random_ranked_point(f, 6, 6, 6, seed) {
                Ok(p) => assert!(p.verify()),
                Err(e) => assert!(matches!(e, Error::DegenerateDraw { .. })),
            }
        }
    }
}
