//! The two symmetric families with exact answers: `K_n° ∪ K_1°` and `G_n`.

use nalgebra::DMatrix;
use rand::{Rng, RngCore};
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{trial_rng, CertificateKind, TrialRecord, TypicalSampleReport};
use crate::complete::{sym_lowrank_fit, FitOptions, SymPartialMatrix};
use crate::error::{Error, Result};
use crate::gcr::{sgcr, GcrOptions};
use crate::pattern::{join_family, knk1};

/// Relative threshold below which an eigenvalue counts as zero.
pub const EIGEN_ZERO_TOL: f64 = 1e-10;

/// Completion rank of `[[A, ?], [?, λ]]` for nonsingular `A`: `n + 1` exactly
/// when `A` is definite with sign opposite to `λ`, otherwise `n`.
pub fn knk1_boundary(a: &DMatrix<f64>, lambda: f64) -> Result<usize> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n {
        return Err(Error::ShapeMismatch(format!("{}x{} is not a nonempty square", n, a.ncols())));
    }
    if a.iter().any(|x| !x.is_finite()) || !lambda.is_finite() {
        return Err(Error::NonFiniteEntry);
    }
    let scale = a.amax();
    if (a - a.transpose()).amax() > 1e-12 * scale {
        return Err(Error::ShapeMismatch("A is not symmetric".into()));
    }
    if lambda == 0.0 {
        return Err(Error::BoundaryCase("lambda = 0".into()));
    }
    let eig = a.clone().symmetric_eigenvalues();
    let top = eig.amax();
    if top == 0.0 || eig.iter().any(|e| e.abs() <= EIGEN_ZERO_TOL * top) {
        return Err(Error::BoundaryCase("A is numerically singular".into()));
    }
    let positive = eig.iter().all(|&e| e > 0.0);
    let negative = eig.iter().all(|&e| e < 0.0);
    Ok(if (positive && lambda < 0.0) || (negative && lambda > 0.0) { n + 1 } else { n })
}

/// `A` as a symmetrized Gaussian matrix and `λ` standard Gaussian.
pub fn knk1_draw<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (DMatrix<f64>, f64) {
    let g = DMatrix::from_fn(n, n, |_, _| -> f64 { StandardNormal.sample(&mut *rng) });
    let lambda = StandardNormal.sample(&mut *rng);
    ((&g + g.transpose()) * 0.5, lambda)
}

/// The partial matrix on the `K_n° ∪ K_1°` pattern carrying `(A, λ)`.
pub fn knk1_partial(a: &DMatrix<f64>, lambda: f64) -> SymPartialMatrix<f64> {
    let n = a.nrows();
    SymPartialMatrix::from_fn(knk1(n), |i, j| if i == n { lambda } else { a[(i, j)] })
}

pub fn knk1_typical_sample(n: usize, trials: usize, seed: u64) -> Result<TypicalSampleReport> {
    if n == 0 {
        return Err(Error::InvalidParams {
            family: "sym-knk1".into(),
            reason: "n must be at least 1".into(),
        });
    }
    let records = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let (a, lambda) = knk1_draw(n, &mut trial_rng(seed, t));
            match knk1_boundary(&a, lambda) {
                Ok(class) => Ok(TrialRecord {
                    trial: t,
                    class: Some(class),
                    certificate: Some(CertificateKind::ExactCertificate),
                    value: Some(lambda),
                }),
                Err(Error::BoundaryCase(_)) => Ok(TrialRecord {
                    trial: t,
                    class: None,
                    certificate: None,
                    value: Some(lambda),
                }),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TypicalSampleReport::from_records(format!("sym-knk1 {n}"), seed, None, records))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub checked: usize,
    pub agreed: usize,
    pub agreement: f64,
    /// Trials where the exact test and the optimizer disagree.
    pub disagreements: Vec<u64>,
}

/// Re-decides the first `count` trials of [`knk1_typical_sample`] (same seed)
/// with the symmetric optimizer at rank `n`.
pub fn knk1_cross_check(n: usize, count: usize, seed: u64, opts: &FitOptions) -> Result<CrossCheck> {
    let opts = FitOptions {
        stop_on_success: true,
        ..opts.clone()
    };
    let outcomes = (0..count as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let (a, lambda) = knk1_draw(n, &mut rng);
            let exact = match knk1_boundary(&a, lambda) {
                Ok(c) => c,
                Err(Error::BoundaryCase(_)) => return Ok(None),
                Err(e) => return Err(e),
            };
            let fit_opts = FitOptions {
                seed: rng.next_u64(),
                ..opts.clone()
            };
            let fit = sym_lowrank_fit(&knk1_partial(&a, lambda), n, &fit_opts)?;
            let optimizer = if fit.completable { n } else { n + 1 };
            Ok(Some((t, exact == optimizer)))
        })
        .collect::<Result<Vec<_>>>()?;
    let decided: Vec<(u64, bool)> = outcomes.into_iter().flatten().collect();
    let agreed = decided.iter().filter(|d| d.1).count();
    Ok(CrossCheck {
        checked: decided.len(),
        agreed,
        agreement: if decided.is_empty() { 1.0 } else { agreed as f64 / decided.len() as f64 },
        disagreements: decided.iter().filter(|d| !d.1).map(|d| d.0).collect(),
    })
}

/// Determinants of random completions of a full-rank witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub fills: usize,
    /// Every determinant matched its closed form and had the expected sign.
    pub passed: bool,
    pub max_relative_error: f64,
    /// Largest determinant seen; negative when all were negative.
    pub max_determinant: f64,
}

fn witness_check(
    fills: usize,
    seed: u64,
    unknowns: usize,
    build: impl Fn(&[f64]) -> DMatrix<f64> + Sync,
    closed_form: impl Fn(&[f64]) -> f64 + Sync,
    sign_ok: impl Fn(f64, &[f64]) -> bool + Sync,
) -> WitnessCheck {
    let results: Vec<(f64, f64, bool)> = (0..fills as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let x: Vec<f64> = (0..unknowns).map(|_| StandardNormal.sample(&mut rng)).collect();
            let det = build(&x).determinant();
            let expected = closed_form(&x);
            let err = (det - expected).abs() / expected.abs().max(1.0);
            (err, det, sign_ok(det, &x))
        })
        .collect();
    let max_relative_error = results.iter().map(|r| r.0).fold(0.0, f64::max);
    WitnessCheck {
        fills,
        passed: results.iter().all(|r| r.2) && max_relative_error < 1e-9,
        max_relative_error,
        max_determinant: results.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max),
    }
}

/// `X_n = [[I_n, x], [x^T, -1]]`: every completion has determinant `-1 - |x|^2 < 0`.
pub fn knk1_witness_check(n: usize, fills: usize, seed: u64) -> WitnessCheck {
    witness_check(
        fills,
        seed,
        n,
        |x| {
            DMatrix::from_fn(n + 1, n + 1, |i, j| match (i == n, j == n) {
                (false, false) => f64::from(u8::from(i == j)),
                (true, true) => -1.0,
                (true, false) => x[j],
                (false, true) => x[i],
            })
        },
        |x| -1.0 - x.iter().map(|v| v * v).sum::<f64>(),
        |det, _| det < 0.0,
    )
}

/// Witness on `G_n`: diagonal `1` on the first vertex of each pair and `-1` on
/// the second, zero off-diagonal. A completion `x` of the anti-diagonal has
/// determinant `prod (-1 - x_t^2)`, never zero.
pub fn gn_witness_check(n: usize, fills: usize, seed: u64) -> WitnessCheck {
    let size = 2 * n;
    witness_check(
        fills,
        seed,
        n,
        |x| {
            DMatrix::from_fn(size, size, |i, j| {
                if i == j {
                    if i < n { 1.0 } else { -1.0 }
                } else if i + j == size - 1 {
                    x[i.min(j)]
                } else {
                    0.0
                }
            })
        },
        |x| x.iter().map(|v| -1.0 - v * v).product(),
        |det, _| if n % 2 == 1 { det < 0.0 } else { det > 0.0 },
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnReport {
    pub n: usize,
    pub formula_sgcr: usize,
    pub engine_sgcr: usize,
    pub agree: bool,
    /// All integers from `sgcr` to `2n`.
    pub typical_ranks: Vec<usize>,
    pub typical_count: usize,
    /// `1 + floor((sqrt(1+8n) - 1)/2)`, which must equal `typical_count`.
    pub formula_count: usize,
    pub knk1_witness: WitnessCheck,
    pub gn_witness: WitnessCheck,
}

/// `floor((sqrt(1+8n) - 1)/2)`: the largest `k` with `k(k+1)/2 <= n`, in integers.
pub fn triangular_root(n: usize) -> usize {
    let mut k = ((2.0 * n as f64).sqrt()) as usize + 1;
    while k * (k + 1) / 2 > n {
        k -= 1;
    }
    k
}

pub fn gn_sgcr_formula(n: usize) -> usize {
    2 * n - triangular_root(n)
}

pub fn gn_report(n: usize, opts: &GcrOptions, witness_seed: u64) -> Result<GnReport> {
    if n == 0 {
        return Err(Error::InvalidParams {
            family: "sym-join-family".into(),
            reason: "n must be at least 1".into(),
        });
    }
    let formula_sgcr = gn_sgcr_formula(n);
    let engine_sgcr = sgcr(&join_family(n), opts)?.gcr;
    let typical_ranks: Vec<usize> = (engine_sgcr..=2 * n).collect();
    Ok(GnReport {
        n,
        formula_sgcr,
        engine_sgcr,
        agree: formula_sgcr == engine_sgcr,
        typical_count: typical_ranks.len(),
        typical_ranks,
        formula_count: 1 + triangular_root(n),
        knk1_witness: knk1_witness_check(n, 100, witness_seed),
        gn_witness: gn_witness_check(n, 100, witness_seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Rotation3;

    #[test]
    fn boundary_examples() {
        for n in 1..5 {
            let i = DMatrix::identity(n, n);
            assert_eq!(knk1_boundary(&i, -1.0).unwrap(), n + 1);
            assert_eq!(knk1_boundary(&i, 1.0).unwrap(), n);
            assert_eq!(knk1_boundary(&(-&i), 1.0).unwrap(), n + 1);
        }
        let indefinite = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, -1.0]));
        assert_eq!(knk1_boundary(&indefinite, 3.0).unwrap(), 2);
        assert_eq!(knk1_boundary(&indefinite, -3.0).unwrap(), 2);
        assert!(matches!(knk1_boundary(&DMatrix::identity(2, 2), 0.0), Err(Error::BoundaryCase(_))));
        let singular = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(knk1_boundary(&singular, 1.0), Err(Error::BoundaryCase(_))));
        assert!(knk1_boundary(&DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]), 1.0).is_err());
    }

    #[test]
    fn boundary_invariances() {
        let mut rng = trial_rng(3, 0);
        for _ in 0..200 {
            let (a, l) = knk1_draw(3, &mut rng);
            let Ok(c) = knk1_boundary(&a, l) else { continue };
            let s = rng.random_range(0.1..10.0);
            assert_eq!(knk1_boundary(&(&a * s), l * s).unwrap(), c);
            let q = Rotation3::from_euler_angles(rng.random(), rng.random(), rng.random());
            let q = DMatrix::from_iterator(3, 3, q.matrix().iter().copied());
            let b = q.transpose() * &a * &q;
            let b = (&b + b.transpose()) * 0.5;
            assert_eq!(knk1_boundary(&b, l).unwrap(), c);
        }
    }

    #[test]
    fn one_by_one_is_a_sign_test() {
        let r = knk1_typical_sample(1, 2000, 9).unwrap();
        for rec in &r.records {
            let (a, l) = knk1_draw(1, &mut trial_rng(9, rec.trial));
            let opposite = a[(0, 0)] * l < 0.0;
            assert_eq!(rec.class, Some(if opposite { 2 } else { 1 }));
        }
        assert!((r.frequency(2) - 0.5).abs() < 0.05);
    }

    #[test]
    fn optimizer_agrees_on_small_sample() {
        let c = knk1_cross_check(2, 20, 4, &FitOptions::default()).unwrap();
        assert!(c.agreement >= 0.95, "{c:?}");
    }

    #[test]
    fn closed_forms() {
        assert_eq!(gn_sgcr_formula(1), 1);
        assert_eq!(gn_sgcr_formula(3), 4);
        assert_eq!(gn_sgcr_formula(6), 9);
        for n in 0..200usize {
            let k = (((1.0 + 8.0 * n as f64).sqrt() - 1.0) / 2.0).floor() as usize;
            assert_eq!(triangular_root(n), k);
        }
    }

    #[test]
    fn gn_small_reports() {
        let opts = GcrOptions::default();
        let r = gn_report(3, &opts, 0).unwrap();
        assert!(r.agree);
        assert_eq!(r.typical_ranks, vec![4, 5, 6]);
        assert_eq!(r.typical_count, r.formula_count);
        assert!(r.knk1_witness.passed && r.gn_witness.passed);
        let r = gn_report(1, &opts, 0).unwrap();
        assert_eq!((r.engine_sgcr, r.typical_count), (1, 2));
    }

    #[test]
    fn witnesses_are_negative() {
        for n in 1..=6 {
            let w = knk1_witness_check(n, 100, n as u64);
            assert!(w.passed && w.max_determinant < 0.0, "{w:?}");
            assert!(gn_witness_check(n, 100, n as u64).passed);
        }
    }
}
