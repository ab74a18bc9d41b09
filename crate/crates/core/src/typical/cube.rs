//! Real completion ranks 2 and 3 of the 4x4 pattern with unknown diagonal.

use rand::RngCore;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::report::{trial_rng, CertificateKind, TrialRecord, TypicalSampleReport};
use crate::complete::{lowrank_fit, FitOptions, PartialMatrix};
use crate::error::{Error, Result};
use crate::pattern::cube;

/// Dense 4x4 view of a cube-pattern partial matrix; the diagonal is unused.
fn dense(x: &PartialMatrix<f64>) -> Result<[[f64; 4]; 4]> {
    if x.pattern() != &cube() {
        return Err(Error::WrongPattern("expected the 4x4 pattern with unknown diagonal".into()));
    }
    let mut a = [[0.0; 4]; 4];
    for (i, j, v) in x.entries() {
        a[i][j] = v;
    }
    Ok(a)
}

/// Closed-form discriminant with respect to `a11`; local names are 1-based.
fn discriminant_of(a: &[[f64; 4]; 4]) -> f64 {
    let g = |i: usize, j: usize| a[i - 1][j - 1];
    let (a12, a13, a14) = (g(1, 2), g(1, 3), g(1, 4));
    let (a21, a23, a24) = (g(2, 1), g(2, 3), g(2, 4));
    let (a31, a32, a34) = (g(3, 1), g(3, 2), g(3, 4));
    let (a41, a42, a43) = (g(4, 1), g(4, 2), g(4, 3));
    let b = a13 * a24 * a32 * a41 - a12 * a23 * a34 * a41 - a14 * a23 * a31 * a42 - a13 * a21 * a34 * a42
        + a12 * a24 * a31 * a43
        + a14 * a21 * a32 * a43;
    let c3 = a23 * a34 * a42 - a24 * a32 * a43;
    let sextic = a12 * a14 * a23 * a31 * a41 - a12 * a13 * a24 * a31 * a41 - a13 * a14 * a21 * a32 * a41
        + a12 * a13 * a21 * a34 * a41
        + a13 * a14 * a21 * a31 * a42
        - a12 * a14 * a21 * a31 * a43;
    b * b - 4.0 * c3 * sextic
}

/// Discriminant of the rank-2 hypersurface as a quadratic in `a11`. Negative
/// means no real rank-2 completion.
pub fn cube_discriminant(x: &PartialMatrix<f64>) -> Result<f64> {
    Ok(discriminant_of(&dense(x)?))
}

/// The discriminants for each diagonal entry, from the cyclic relabeling
/// `i -> i + k (mod 4)` of rows and columns. Entry 0 is [`cube_discriminant`].
/// The polynomial is invariant under this relabeling, so all four agree up to
/// rounding.
pub fn cube_discriminants(x: &PartialMatrix<f64>) -> Result<[f64; 4]> {
    let a = dense(x)?;
    Ok(std::array::from_fn(|k| {
        let shifted: [[f64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| a[(i + k) % 4][(j + k) % 4]));
        discriminant_of(&shifted)
    }))
}

fn gaussian_cube<R: rand::Rng + ?Sized>(rng: &mut R) -> PartialMatrix<f64> {
    PartialMatrix::from_fn(cube(), |_, _| StandardNormal.sample(&mut *rng))
}

/// Classifies one partial matrix: rank 3 when some discriminant is negative,
/// rank 2 when the optimizer finds a rank-2 completion, otherwise unresolved.
pub fn classify_cube(x: &PartialMatrix<f64>, opts: &FitOptions) -> Result<TrialRecord> {
    let d = cube_discriminants(x)?;
    let min = d.iter().copied().fold(f64::INFINITY, f64::min);
    if min < 0.0 {
        return Ok(TrialRecord {
            trial: 0,
            class: Some(3),
            certificate: Some(CertificateKind::ExactCertificate),
            value: Some(min),
        });
    }
    let fit = lowrank_fit(x, 2, opts)?;
    Ok(TrialRecord {
        trial: 0,
        class: fit.completable.then_some(2),
        certificate: fit.completable.then_some(CertificateKind::OptimizerEvidence),
        value: Some(fit.residual),
    })
}

/// Gaussian Monte Carlo over the cube pattern.
pub fn cube_typical_sample(trials: usize, seed: u64, opts: &FitOptions) -> Result<TypicalSampleReport> {
    let opts = FitOptions {
        stop_on_success: true,
        ..opts.clone()
    };
    let records = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let x = gaussian_cube(&mut rng);
            let fit_opts = FitOptions {
                seed: rng.next_u64(),
                ..opts.clone()
            };
            classify_cube(&x, &fit_opts).map(|r| TrialRecord { trial: t, ..r })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TypicalSampleReport::from_records("cube", seed, Some(opts), records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{Matrix2, Matrix3};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn reference_a() -> PartialMatrix<f64> {
        let a = [
            [0.0, -1.5, -1.0, 1.0],
            [-5.0, 0.0, 1.0, -2.0],
            [-2.0, 1.0, 0.0, -1.0],
            [1.0, -1.0, -1.0, 0.0],
        ];
        PartialMatrix::from_fn(cube(), |i, j| a[i][j])
    }

    /// Oracle: the determinantal quadratic in `a11`, interpolated at three points.
    fn oracle(a: &[[f64; 4]; 4]) -> f64 {
        let p = |x: f64| {
            let g = |i: usize, j: usize| if (i, j) == (1, 1) { x } else { a[i - 1][j - 1] };
            Matrix2::new(g(1, 1), g(1, 3), g(2, 1), g(2, 3)).determinant()
                * Matrix3::new(g(1, 1), g(1, 2), g(1, 4), g(3, 1), g(3, 2), g(3, 4), g(4, 1), g(4, 2), 0.0).determinant()
                - Matrix2::new(g(1, 1), g(1, 2), g(3, 1), g(3, 2)).determinant()
                    * Matrix3::new(g(1, 1), g(1, 3), g(1, 4), g(2, 1), g(2, 3), g(2, 4), g(4, 1), g(4, 3), 0.0).determinant()
        };
        let (p0, p1, m1) = (p(0.0), p(1.0), p(-1.0));
        let qa = (p1 + m1) / 2.0 - p0;
        let qb = (p1 - m1) / 2.0;
        qb * qb - 4.0 * qa * p0
    }

    #[test]
    fn reference_matrix_is_negative() {
        let d = cube_discriminant(&reference_a()).unwrap();
        assert!((d + 1.75).abs() < 1e-12, "{d}");
    }

    #[test]
    fn closed_form_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let x = gaussian_cube(&mut rng);
            let a = dense(&x).unwrap();
            let (d, o) = (cube_discriminant(&x).unwrap(), oracle(&a));
            assert!((d - o).abs() <= 1e-9 * (1.0 + o.abs()), "{d} vs {o}");
        }
    }

    #[test]
    fn ones_and_rank_one() {
        let ones = PartialMatrix::from_fn(cube(), |_, _| 1.0);
        assert_eq!(cube_discriminant(&ones).unwrap(), 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let u: Vec<f64> = (0..4).map(|_| StandardNormal.sample(&mut rng)).collect();
            let v: Vec<f64> = (0..4).map(|_| StandardNormal.sample(&mut rng)).collect();
            let x = PartialMatrix::from_fn(cube(), |i, j| u[i] * v[j]);
            for d in cube_discriminants(&x).unwrap() {
                assert!(d >= -1e-12, "{d}");
            }
        }
    }

    #[test]
    fn siblings_follow_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = gaussian_cube(&mut rng);
        let d = cube_discriminants(&x).unwrap();
        let a = dense(&x).unwrap();
        let shifted = PartialMatrix::from_fn(cube(), |i, j| a[(i + 1) % 4][(j + 1) % 4]);
        let e = cube_discriminants(&shifted).unwrap();
        for k in 0..4 {
            assert!((e[k] - d[(k + 1) % 4]).abs() <= 1e-12 * (1.0 + d[(k + 1) % 4].abs()));
        }
        // transposing keeps a11 in place
        let t = x.transpose();
        assert!((cube_discriminant(&t).unwrap() - d[0]).abs() <= 1e-12 * (1.0 + d[0].abs()));
        // the cyclic shift is a symmetry of the polynomial itself
        for k in 1..4 {
            assert!((d[k] - d[0]).abs() <= 1e-12 * (1.0 + d[0].abs()));
        }
    }

    #[test]
    fn sampling_is_deterministic_and_sees_both_ranks() {
        let opts = FitOptions::default();
        let r1 = cube_typical_sample(400, 11, &opts).unwrap();
        let r2 = cube_typical_sample(400, 11, &opts).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.count(2) > 0 && r1.count(3) > 0, "{:?}", r1.classes);
        assert!(cube_typical_sample(0, 1, &opts).unwrap().classes.is_empty());
        assert!(cube_discriminant(&PartialMatrix::from_fn(crate::pattern::BipartitePattern::complete(4, 4), |_, _| 1.0)).is_err());
    }
}
