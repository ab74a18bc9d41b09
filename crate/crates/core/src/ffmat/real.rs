use nalgebra::{DMatrix, DVector};

use super::matrix::FpMatrix;
use crate::error::{Error, Result};

/// Default relative threshold for numerical rank.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Dense real matrix with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix(DMatrix<f64>);

impl RealMatrix {
    pub fn new(rows: usize, cols: usize, row_major: &[f64]) -> Result<Self> {
        if row_major.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                row_major.len()
            )));
        }
        Self::from_dmatrix(DMatrix::from_row_slice(rows, cols, row_major))
    }

    pub fn from_dmatrix(m: DMatrix<f64>) -> Result<Self> {
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self(m))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    /// Integer-lifted copy of an F_p matrix, using symmetric representatives.
    pub fn lift(a: &FpMatrix) -> Self {
        let f = a.field();
        Self(DMatrix::from_fn(a.rows(), a.cols(), |i, j| f.lift(a.get(i, j)) as f64))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<f64> {
        self.0
    }

    pub fn singular_values(&self) -> Vec<f64> {
        if self.0.is_empty() {
            return Vec::new();
        }
        let mut s: Vec<f64> = self.0.singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// Number of singular values above `tol * sigma_max`.
    pub fn rank(&self, tol: f64) -> Result<usize> {
        if !(tol > 0.0) {
            return Err(Error::ShapeMismatch(format!("rank tolerance must be positive, got {tol}")));
        }
        let s = self.singular_values();
        let Some(&max) = s.first() else {
            return Ok(0);
        };
        if max == 0.0 {
            return Ok(0);
        }
        Ok(s.iter().filter(|&&x| x > tol * max).count())
    }

    /// Minimum-norm solution of `A x = b`, rejected when the residual exceeds `1e-10 * |b|`.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.rows() {
            return Err(Error::ShapeMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows()
            )));
        }
        if b.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        let rhs = DVector::from_column_slice(b);
        if self.cols() == 0 || self.rows() == 0 {
            return if rhs.norm() == 0.0 {
                Ok(vec![0.0; self.cols()])
            } else {
                Err(Error::InconsistentSystem)
            };
        }
        let x = pinv_solve(&self.0, &rhs, DEFAULT_RANK_TOL);
        let residual = (&self.0 * &x - &rhs).norm();
        if residual > 1e-10 * rhs.norm() {
            return Err(Error::InconsistentSystem);
        }
        Ok(x.iter().copied().collect())
    }
}

/// Pseudo-inverse solution discarding singular values below `tol * sigma_max`.
pub(crate) fn pinv_solve(a: &DMatrix<f64>, b: &DVector<f64>, tol: f64) -> DVector<f64> {
    let svd = a.clone().svd(true, true);
    let max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = tol * max;
    let u = svd.u.as_ref().expect("u requested");
    let vt = svd.v_t.as_ref().expect("v_t requested");
    let mut x = DVector::zeros(a.ncols());
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > cutoff && s > 0.0 {
            let coeff = u.column(k).dot(b) / s;
            x += vt.row(k).transpose() * coeff;
        }
    }
    x
}

/// Numerical rank with relative tolerance.
pub fn rank_float(a: &RealMatrix, tol: f64) -> Result<usize> {
    a.rank(tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn rank_examples() {
        let id = RealMatrix::from_dmatrix(DMatrix::identity(3, 3)).unwrap();
        assert_eq!(rank_float(&id, 1e-9).unwrap(), 3);
        assert_eq!(rank_float(&RealMatrix::zeros(3, 4), 1e-9).unwrap(), 0);

        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = DMatrix::from_fn(5, 2, |_, _| -> f64 { StandardNormal.sample(&mut rng) });
        let y = DMatrix::from_fn(2, 6, |_, _| -> f64 { StandardNormal.sample(&mut rng) });
        let m = RealMatrix::from_dmatrix(x * y).unwrap();
        assert_eq!(m.rank(1e-9).unwrap(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(RealMatrix::new(1, 2, &[1.0, f64::NAN]), Err(Error::NonFiniteEntry)));
        assert!(RealMatrix::zeros(2, 2).rank(0.0).is_err());
    }

    #[test]
    fn solve_examples() {
        let a = RealMatrix::new(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let x = a.solve(&[1.0, 0.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!(matches!(a.solve(&[0.0, 1.0]), Err(Error::InconsistentSystem)));

        let wide = RealMatrix::new(2, 3, &[1.0, 2.0, 3.0, 0.0, 1.0, -1.0]).unwrap();
        let b = [2.0, 5.0];
        let x = wide.solve(&b).unwrap();
        let ax = wide.as_dmatrix() * DVector::from_vec(x);
        assert!((ax[0] - 2.0).abs() < 1e-12 && (ax[1] - 5.0).abs() < 1e-12);
    }
}
