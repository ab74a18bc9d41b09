//! Low-rank fitting on the known entries: the numerical probe for real completability.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::partial::{PartialMatrix, SymPartialMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FitOptions {
    pub restarts: usize,
    pub max_iters: usize,
    /// Success threshold, relative to the norm of the known data.
    pub tol: f64,
    pub seed: u64,
    /// Stop at the first restart that succeeds.
    pub stop_on_success: bool,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            restarts: 20,
            max_iters: 500,
            tol: 1e-6,
            seed: 0,
            stop_on_success: false,
        }
    }
}

/// Best fit over all restarts. A failed fit is evidence, not proof, that no
/// rank-`r` completion exists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub rank: usize,
    /// Frobenius norm of the misfit on the known entries.
    pub residual: f64,
    pub data_norm: f64,
    pub completable: bool,
    pub best_restart: usize,
    pub restarts_run: usize,
    /// For symmetric fits, the number of positive signs in `J`.
    pub positive_signs: Option<usize>,
    /// Row-major `m x r` and `n x r` factors (symmetric fits: `U` twice).
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl FitResult {
    /// The fitted full matrix.
    pub fn matrix(&self, m: usize, n: usize) -> DMatrix<f64> {
        let r = self.rank;
        let u = DMatrix::from_row_slice(m, r, &self.u);
        let mut v = DMatrix::from_row_slice(n, r, &self.v);
        if let Some(p) = self.positive_signs {
            for t in p..r {
                v.column_mut(t).neg_mut();
            }
        }
        u * v.transpose()
    }
}

/// Sweeps of alternating least squares before the Levenberg-Marquardt polish.
const ALS_SWEEPS: usize = 25;

/// Levenberg-Marquardt with Nielsen's damping update; never accepts an uphill step.
fn levenberg_marquardt(
    x: &mut DVector<f64>,
    residual: impl Fn(&DVector<f64>) -> DVector<f64>,
    jacobian: impl Fn(&DVector<f64>) -> DMatrix<f64>,
    max_iters: usize,
    target: f64,
) -> f64 {
    let mut e = residual(x);
    let mut cost = e.norm_squared();
    let mut mu = -1.0;
    let mut nu = 2.0;
    for _ in 0..max_iters {
        if cost.sqrt() <= target {
            break;
        }
        let j = jacobian(x);
        let jtj = j.transpose() * &j;
        let g = j.transpose() * &e;
        if g.amax() < 1e-300 {
            break;
        }
        if mu < 0.0 {
            mu = 1e-3 * jtj.diagonal().max().max(1e-12);
        }
        let mut a = jtj.clone();
        for k in 0..a.nrows() {
            a[(k, k)] += mu;
        }
        let Some(chol) = a.cholesky() else {
            mu *= nu;
            nu *= 2.0;
            continue;
        };
        let step = chol.solve(&(-&g));
        let trial = &*x + &step;
        let e_new = residual(&trial);
        let new_cost = e_new.norm_squared();
        let predicted = step.dot(&(mu * &step - &g));
        let rho = (cost - new_cost) / predicted.max(1e-300);
        if new_cost < cost && rho > 0.0 {
            *x = trial;
            e = e_new;
            let shrink = 1.0 - (2.0 * rho - 1.0).powi(3);
            mu *= shrink.max(1.0 / 3.0);
            nu = 2.0;
            if cost - new_cost <= 1e-30 * cost {
                cost = new_cost;
                break;
            }
            cost = new_cost;
        } else {
            mu *= nu;
            nu *= 2.0;
            if mu > 1e30 {
                break;
            }
        }
    }
    cost.sqrt()
}

struct Problem {
    m: usize,
    n: usize,
    edges: Vec<(usize, usize)>,
    data: DVector<f64>,
}

impl Problem {
    fn from_partial(x: &PartialMatrix<f64>) -> Self {
        Self {
            m: x.pattern().m(),
            n: x.pattern().n(),
            edges: x.pattern().edges(),
            data: DVector::from_column_slice(x.values()),
        }
    }

    fn residual(&self, u: &DMatrix<f64>, v: &DMatrix<f64>) -> DVector<f64> {
        DVector::from_iterator(
            self.edges.len(),
            self.edges
                .iter()
                .zip(self.data.iter())
                .map(|(&(i, j), &x)| u.row(i).dot(&v.row(j)) - x),
        )
    }

    fn split(&self, p: &DVector<f64>, r: usize) -> (DMatrix<f64>, DMatrix<f64>) {
        let u = DMatrix::from_row_slice(self.m, r, &p.as_slice()[..self.m * r]);
        let v = DMatrix::from_row_slice(self.n, r, &p.as_slice()[self.m * r..]);
        (u, v)
    }

    fn join(u: &DMatrix<f64>, v: &DMatrix<f64>) -> DVector<f64> {
        let mut out = Vec::with_capacity(u.len() + v.len());
        for m in [u, v] {
            for i in 0..m.nrows() {
                out.extend(m.row(i).iter());
            }
        }
        DVector::from_vec(out)
    }

    /// Least-squares update of the rows of `a` against the fixed `b`, one row at a time.
    fn als_half(&self, a: &mut DMatrix<f64>, b: &DMatrix<f64>, by_row: bool) {
        let r = a.ncols();
        let count = a.nrows();
        let mut lhs = vec![DMatrix::<f64>::zeros(r, r); count];
        let mut rhs = vec![DVector::<f64>::zeros(r); count];
        for (&(i, j), &x) in self.edges.iter().zip(self.data.iter()) {
            let (me, other) = if by_row { (i, j) } else { (j, i) };
            let w = b.row(other).transpose();
            lhs[me] += &w * w.transpose();
            rhs[me] += &w * x;
        }
        for k in 0..count {
            let mut l = lhs[k].clone();
            let ridge = 1e-12 * (1.0 + l.trace());
            for t in 0..r {
                l[(t, t)] += ridge;
            }
            if let Some(c) = l.cholesky() {
                a.row_mut(k).copy_from(&c.solve(&rhs[k]).transpose());
            }
        }
    }

    fn lm(&self, u: &DMatrix<f64>, v: &DMatrix<f64>, max_iters: usize, target: f64) -> (DMatrix<f64>, DMatrix<f64>, f64) {
        let r = u.ncols();
        let mut p = Self::join(u, v);
        let res = levenberg_marquardt(
            &mut p,
            |p| {
                let (u, v) = self.split(p, r);
                self.residual(&u, &v)
            },
            |p| {
                let (u, v) = self.split(p, r);
                let mut jac = DMatrix::zeros(self.edges.len(), (self.m + self.n) * r);
                for (k, &(i, j)) in self.edges.iter().enumerate() {
                    for t in 0..r {
                        jac[(k, i * r + t)] = v[(j, t)];
                        jac[(k, self.m * r + j * r + t)] = u[(i, t)];
                    }
                }
                jac
            },
            max_iters,
            target,
        );
        let (u, v) = self.split(&p, r);
        (u, v, res)
    }

    /// One restart: alternating least squares, then a Levenberg-Marquardt polish.
    fn restart(&self, r: usize, rng: &mut ChaCha8Rng, max_iters: usize) -> (DMatrix<f64>, DMatrix<f64>, f64) {
        let norm = self.data.norm();
        let rms = norm / (self.edges.len().max(1) as f64).sqrt();
        let scale = (rms.max(1e-12) / (r as f64).sqrt()).sqrt();
        let mut draw = |rows: usize| DMatrix::from_fn(rows, r, |_, _| -> f64 { let z: f64 = StandardNormal.sample(&mut *rng); scale * z });
        let mut u: DMatrix<f64> = draw(self.m);
        let mut v: DMatrix<f64> = draw(self.n);
        let mut best = (u.clone(), v.clone(), self.residual(&u, &v).norm());
        let target = 1e-14 * norm.max(1e-300);
        // ALS only finds the basin; LM converges much faster near the end
        for _ in 0..max_iters.min(ALS_SWEEPS) {
            self.als_half(&mut u, &v, true);
            self.als_half(&mut v, &u, false);
            let res = self.residual(&u, &v).norm();
            let improved = res < best.2 * (1.0 - 1e-9);
            if res < best.2 {
                best = (u.clone(), v.clone(), res);
            }
            if !improved || res <= target {
                break;
            }
        }
        let (u, v, res) = self.lm(&best.0, &best.1, max_iters, target);
        if res < best.2 {
            (u, v, res)
        } else {
            best
        }
    }
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Runs `restarts` attempts and keeps the lexicographic minimum of
/// `(residual, restart index)`.
fn best_of<T: Send>(opts: &FitOptions, run: impl Fn(usize) -> (f64, T) + Sync, ok: impl Fn(f64) -> bool) -> (usize, usize, f64, T) {
    if opts.stop_on_success {
        let mut best: Option<(usize, f64, T)> = None;
        let mut ran = 0;
        for k in 0..opts.restarts {
            let (res, t) = run(k);
            ran += 1;
            if best.as_ref().is_none_or(|b| res < b.1) {
                best = Some((k, res, t));
            }
            if ok(res) {
                break;
            }
        }
        let (k, res, t) = best.expect("at least one restart");
        return (k, ran, res, t);
    }
    let all: Vec<(usize, f64, T)> = (0..opts.restarts)
        .into_par_iter()
        .map(|k| {
            let (res, t) = run(k);
            (k, res, t)
        })
        .collect();
    let (k, res, t) = all
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
        .expect("at least one restart");
    (k, opts.restarts, res, t)
}

fn check_opts(opts: &FitOptions) -> Result<()> {
    if opts.restarts == 0 || opts.max_iters == 0 || !(opts.tol > 0.0) {
        return Err(Error::InvalidParams {
            family: "fit".into(),
            reason: "restarts, max_iters and tol must be positive".into(),
        });
    }
    Ok(())
}

fn rows_of(m: &DMatrix<f64>) -> Vec<f64> {
    (0..m.nrows()).flat_map(|i| m.row(i).iter().copied().collect::<Vec<_>>()).collect()
}

/// Best rank-`r` factorization `U V^T` matching the known entries in least squares.
pub fn lowrank_fit(x: &PartialMatrix<f64>, r: usize, opts: &FitOptions) -> Result<FitResult> {
    check_opts(opts)?;
    let (m, n) = (x.pattern().m(), x.pattern().n());
    if r > m.min(n) {
        return Err(Error::ShapeMismatch(format!("rank {r} exceeds min({m}, {n})")));
    }
    let problem = Problem::from_partial(x);
    let norm = problem.data.norm();
    if r == 0 {
        return Ok(FitResult {
            rank: 0,
            residual: norm,
            data_norm: norm,
            completable: norm == 0.0,
            best_restart: 0,
            restarts_run: 0,
            positive_signs: None,
            u: vec![],
            v: vec![],
        });
    }
    let (best_restart, restarts_run, residual, (u, v)) = best_of(
        opts,
        |k| {
            let (u, v, res) = problem.restart(r, &mut restart_rng(opts.seed, k), opts.max_iters);
            (res, (u, v))
        },
        |res| res < opts.tol * norm,
    );
    Ok(FitResult {
        rank: r,
        residual,
        data_norm: norm,
        completable: residual < opts.tol * norm || norm == 0.0,
        best_restart,
        restarts_run,
        positive_signs: None,
        u: rows_of(&u),
        v: rows_of(&v),
    })
}

/// Fits every rank in `ranks` (ascending). Each rank also tries the previous
/// optimum padded with a zero factor column, so the residual never increases with `r`.
pub fn lowrank_profile(x: &PartialMatrix<f64>, ranks: std::ops::RangeInclusive<usize>, opts: &FitOptions) -> Result<Vec<FitResult>> {
    let problem = Problem::from_partial(x);
    let mut out: Vec<FitResult> = Vec::new();
    for r in ranks {
        let mut fit = lowrank_fit(x, r, opts)?;
        if let Some(prev) = out.last().filter(|p| p.rank + 1 == r && p.rank > 0) {
            let pad = |data: &[f64], rows: usize| {
                DMatrix::from_fn(rows, r, |i, t| if t < r - 1 { data[i * (r - 1) + t] } else { 0.0 })
            };
            let (u0, v0) = (pad(&prev.u, problem.m), pad(&prev.v, problem.n));
            let (u, v, res) = problem.lm(&u0, &v0, opts.max_iters, 1e-14 * fit.data_norm);
            let res = res.min(prev.residual);
            if res < fit.residual {
                fit.residual = res;
                fit.completable = res < opts.tol * fit.data_norm;
                fit.u = rows_of(&u);
                fit.v = rows_of(&v);
            }
        }
        out.push(fit);
    }
    Ok(out)
}

struct SymProblem {
    n: usize,
    edges: Vec<(usize, usize)>,
    data: DVector<f64>,
}

impl SymProblem {
    fn value(u: &DMatrix<f64>, signs: &[f64], i: usize, j: usize) -> f64 {
        (0..signs.len()).map(|t| signs[t] * u[(i, t)] * u[(j, t)]).sum()
    }

    fn fit(&self, r: usize, signs: &[f64], rng: &mut ChaCha8Rng, max_iters: usize) -> (DMatrix<f64>, f64) {
        let norm = self.data.norm();
        let rms = norm / (self.edges.len().max(1) as f64).sqrt();
        let scale = (rms.max(1e-12) / (r as f64).sqrt()).sqrt();
        let p0: Vec<f64> = (0..self.n * r)
            .map(|_| scale * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, rng))
            .collect();
        let mut p = DVector::from_vec(p0);
        let n = self.n;
        let res = levenberg_marquardt(
            &mut p,
            |p| {
                let u = DMatrix::from_row_slice(n, r, p.as_slice());
                DVector::from_iterator(
                    self.edges.len(),
                    self.edges
                        .iter()
                        .zip(self.data.iter())
                        .map(|(&(i, j), &x)| Self::value(&u, signs, i, j) - x),
                )
            },
            |p| {
                let u = DMatrix::from_row_slice(n, r, p.as_slice());
                let mut jac = DMatrix::zeros(self.edges.len(), n * r);
                for (k, &(i, j)) in self.edges.iter().enumerate() {
                    for t in 0..r {
                        jac[(k, i * r + t)] += signs[t] * u[(j, t)];
                        jac[(k, j * r + t)] += signs[t] * u[(i, t)];
                    }
                }
                jac
            },
            max_iters,
            1e-14 * norm.max(1e-300),
        );
        (DMatrix::from_row_slice(n, r, p.as_slice()), res)
    }
}

/// Best symmetric fit `U J U^T` over all signatures `J` with `r` signs.
pub fn sym_lowrank_fit(x: &SymPartialMatrix<f64>, r: usize, opts: &FitOptions) -> Result<FitResult> {
    check_opts(opts)?;
    let n = x.pattern().n();
    if r > n {
        return Err(Error::ShapeMismatch(format!("rank {r} exceeds {n}")));
    }
    let problem = SymProblem {
        n,
        edges: x.pattern().edges(),
        data: DVector::from_column_slice(x.values()),
    };
    let norm = problem.data.norm();
    if r == 0 {
        return Ok(FitResult {
            rank: 0,
            residual: norm,
            data_norm: norm,
            completable: norm == 0.0,
            best_restart: 0,
            restarts_run: 0,
            positive_signs: Some(0),
            u: vec![],
            v: vec![],
        });
    }
    // restart k tries signature k % (r + 1)
    let (best_restart, restarts_run, residual, (u, p)) = best_of(
        &FitOptions {
            restarts: opts.restarts * (r + 1),
            ..opts.clone()
        },
        |k| {
            let p = k % (r + 1);
            let signs: Vec<f64> = (0..r).map(|t| if t < p { 1.0 } else { -1.0 }).collect();
            let (u, res) = problem.fit(r, &signs, &mut restart_rng(opts.seed, k), opts.max_iters);
            (res, (u, p))
        },
        |res| res < opts.tol * norm,
    );
    let flat = rows_of(&u);
    Ok(FitResult {
        rank: r,
        residual,
        data_norm: norm,
        completable: residual < opts.tol * norm || norm == 0.0,
        best_restart,
        restarts_run,
        positive_signs: Some(p),
        u: flat.clone(),
        v: flat,
    })
}

/// Standard Gaussian values on the known entries of a pattern.
pub fn gaussian_partial<R: Rng + ?Sized>(pattern: crate::pattern::BipartitePattern, rng: &mut R) -> PartialMatrix<f64> {
    PartialMatrix::from_fn(pattern, |_, _| StandardNormal.sample(&mut *rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{cube, tree_path, BipartitePattern, SymmetricPattern};

    fn cube_a() -> PartialMatrix<f64> {
        let a = [
            [0.0, -1.5, -1.0, 1.0],
            [-5.0, 0.0, 1.0, -2.0],
            [-2.0, 1.0, 0.0, -1.0],
            [1.0, -1.0, -1.0, 0.0],
        ];
        PartialMatrix::from_fn(cube(), |i, j| a[i][j])
    }

    #[test]
    fn tree_fits_rank_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = PartialMatrix::from_fn(tree_path(4, 4).unwrap(), |_, _| rng.random_range(0.5..2.0));
        let fit = lowrank_fit(&x, 1, &FitOptions::default()).unwrap();
        assert!(fit.residual < 1e-10, "{}", fit.residual);
        assert!(fit.completable);
    }

    #[test]
    fn cube_matrix_needs_rank_three() {
        let opts = FitOptions {
            restarts: 50,
            ..FitOptions::default()
        };
        let r2 = lowrank_fit(&cube_a(), 2, &opts).unwrap();
        assert!(r2.residual > 1e-2, "{}", r2.residual);
        assert!(!r2.completable);
        let r3 = lowrank_fit(&cube_a(), 3, &opts).unwrap();
        assert!(r3.residual < 1e-8, "{}", r3.residual);
        let m = r3.matrix(4, 4);
        for (i, j, v) in cube_a().entries() {
            assert!((m[(i, j)] - v).abs() < 1e-8);
        }
    }

    #[test]
    fn full_data_at_its_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = DMatrix::from_fn(5, 2, |_, _| -> f64 { StandardNormal.sample(&mut rng) }) * DMatrix::from_fn(2, 4, |_, _| -> f64 { StandardNormal.sample(&mut rng) });
        let x = PartialMatrix::from_fn(BipartitePattern::complete(5, 4), |i, j| a[(i, j)]);
        assert!(lowrank_fit(&x, 2, &FitOptions::default()).unwrap().residual < 1e-10);
    }

    #[test]
    fn profile_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = gaussian_partial(BipartitePattern::complete(4, 5), &mut rng);
        let opts = FitOptions {
            restarts: 3,
            ..FitOptions::default()
        };
        let prof = lowrank_profile(&x, 1..=4, &opts).unwrap();
        for w in prof.windows(2) {
            assert!(w[1].residual <= w[0].residual + 1e-12);
        }
        assert!(prof[3].residual < 1e-10);
    }

    #[test]
    fn symmetric_signatures() {
        let knk1 = crate::pattern::knk1(3);
        let x = |lambda: f64| SymPartialMatrix::from_fn(knk1.clone(), |i, j| if i == j { if i == 3 { lambda } else { 1.0 } } else { 0.0 });
        let opts = FitOptions::default();
        assert!(sym_lowrank_fit(&x(4.0), 3, &opts).unwrap().residual < 1e-8);
        assert!(sym_lowrank_fit(&x(-1.0), 3, &opts).unwrap().residual > 1e-3);
        let full = SymPartialMatrix::from_fn(SymmetricPattern::complete(3), |i, j| (i + j) as f64 - 1.5 * (i * j) as f64);
        let fit = sym_lowrank_fit(&full, 3, &opts).unwrap();
        assert!(fit.residual < 1e-10);
        let m = fit.matrix(3, 3);
        assert!((m[(1, 2)] - full.values()[4]).abs() < 1e-8);
    }

    #[test]
    fn bad_options() {
        let opts = FitOptions {
            restarts: 0,
            ..FitOptions::default()
        };
        assert!(lowrank_fit(&cube_a(), 2, &opts).is_err());
        assert!(lowrank_fit(&cube_a(), 5, &FitOptions::default()).is_err());
    }
}
