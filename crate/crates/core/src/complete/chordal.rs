//! Completion by bisimplicial elimination and single-line fitting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::backend::{Backend, FpBackend, RealBackend};
use super::partial::{CompletedEntries, CompletionResult, PartialMatrix};
use crate::error::{Error, Result};
use crate::ffmat::{rank_float, FpMatrix, PrimeField, RealMatrix, DEFAULT_RANK_TOL};
use crate::pattern::{bisimplicial_elimination, is_chordal_bipartite, Vertex};

/// Fits a partially known column into the column span of `m` (`rows x cols`, row-major).
///
/// Solves `M_S x = v_S` on the known rows `S` and returns `M x`. The known
/// rows must have full rank `k`; a dependent block is exactly the situation
/// where a rank-preserving completion can fail.
pub fn fit_column<B: Backend>(
    backend: &B,
    rows: usize,
    cols: usize,
    m: &[B::Scalar],
    v: &[Option<B::Scalar>],
) -> Result<Vec<B::Scalar>> {
    if m.len() != rows * cols || v.len() != rows {
        return Err(Error::ShapeMismatch(format!(
            "column of length {} for a {rows}x{cols} matrix",
            v.len()
        )));
    }
    let known: Vec<usize> = (0..rows).filter(|&i| v[i].is_some()).collect();
    let k = known.len();
    if k == 0 {
        return Ok(vec![backend.zero(); rows]);
    }
    let rank = backend.rank(rows, cols, m);
    if k > rank {
        return Err(Error::FitPrecondition(format!("{k} known entries exceed rank {rank}")));
    }
    let block: Vec<B::Scalar> = known.iter().flat_map(|&i| m[i * cols..(i + 1) * cols].iter().copied()).collect();
    let block_rank = backend.rank(k, cols, &block);
    if block_rank < k {
        return Err(Error::FitPrecondition(format!(
            "the {k} known rows of the matrix are dependent (rank {block_rank})"
        )));
    }
    let b: Vec<B::Scalar> = known.iter().map(|&i| v[i].expect("known")).collect();
    let sol = backend.solve(k, cols, &block, &b).ok_or(Error::InconsistentSystem)?;
    Ok((0..rows)
        .map(|i| backend.dot(&m[i * cols..(i + 1) * cols], &sol.particular))
        .collect())
}

/// Builds one new line (row or column) of the completion.
///
/// `a` is `p x q` with the existing lines as its columns; `known` gives the
/// prescribed values at positions along the new line.
fn new_line<B: Backend>(
    backend: &B,
    p: usize,
    q: usize,
    a: &[B::Scalar],
    known: &[(usize, B::Scalar)],
    vertex: Vertex,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<B::Scalar>> {
    let combine = |x: &[B::Scalar]| -> Vec<B::Scalar> { (0..p).map(|i| backend.dot(&a[i * q..(i + 1) * q], x)).collect() };
    if known.is_empty() {
        let x: Vec<B::Scalar> = (0..q).map(|_| backend.random(rng)).collect();
        return Ok(combine(&x));
    }
    let k = known.len();
    let block: Vec<B::Scalar> = known.iter().flat_map(|&(i, _)| a[i * q..(i + 1) * q].iter().copied()).collect();
    let b: Vec<B::Scalar> = known.iter().map(|&(_, v)| v).collect();
    if let Some(sol) = backend.solve(k, q, &block, &b) {
        let mut x = sol.particular;
        for basis in &sol.kernel {
            let t = backend.random(rng);
            for (xi, &bi) in x.iter_mut().zip(basis) {
                *xi = backend.add(*xi, backend.mul(t, bi));
            }
        }
        let mut line = combine(&x);
        for &(i, v) in known {
            line[i] = v;
        }
        return Ok(line);
    }
    let rank = backend.rank(p, q, a);
    if k <= rank {
        return Err(Error::VanishingMinor {
            vertex: vertex.to_string(),
            k,
            rank,
        });
    }
    // more known entries than the current rank: the rank goes up by one
    let mut line: Vec<B::Scalar> = (0..p).map(|_| backend.random(rng)).collect();
    for &(i, v) in known {
        line[i] = v;
    }
    Ok(line)
}

/// Completes a partial matrix on a chordal bipartite pattern, reinserting the
/// vertices of a bisimplicial elimination order in reverse. Returns the dense
/// row-major completion.
pub fn chordal_complete_with<B: Backend>(
    backend: &B,
    x: &PartialMatrix<B::Scalar>,
    seed: u64,
) -> Result<Vec<B::Scalar>> {
    let g = x.pattern();
    if !is_chordal_bipartite(g).is_chordal() {
        return Err(Error::NotChordal);
    }
    let trace = bisimplicial_elimination(g)?;
    let (m, n) = (g.m(), g.n());
    let known = x.to_dense();
    let mut full: Vec<Option<B::Scalar>> = vec![None; m * n];
    let mut rows: Vec<usize> = Vec::new();
    let mut cols: Vec<usize> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for step in trace.steps.iter().rev() {
        let cell = |full: &[Option<B::Scalar>], i: usize, j: usize| full[i * n + j].expect("live cells are filled");
        match step.vertex {
            Vertex::Col(j) => {
                let (p, q) = (rows.len(), cols.len());
                let a: Vec<B::Scalar> =
                    rows.iter().flat_map(|&i| cols.iter().map(move |&c| (i, c))).map(|(i, c)| cell(&full, i, c)).collect();
                let spec: Vec<(usize, B::Scalar)> = rows
                    .iter()
                    .enumerate()
                    .filter_map(|(t, &i)| known[i * n + j].map(|v| (t, v)))
                    .collect();
                let line = new_line(backend, p, q, &a, &spec, step.vertex, &mut rng)?;
                for (t, &i) in rows.iter().enumerate() {
                    full[i * n + j] = Some(line[t]);
                }
                cols.push(j);
            }
            Vertex::Row(i) => {
                let (p, q) = (cols.len(), rows.len());
                let a: Vec<B::Scalar> =
                    cols.iter().flat_map(|&c| rows.iter().map(move |&r| (r, c))).map(|(r, c)| cell(&full, r, c)).collect();
                let spec: Vec<(usize, B::Scalar)> = cols
                    .iter()
                    .enumerate()
                    .filter_map(|(t, &c)| known[i * n + c].map(|v| (t, v)))
                    .collect();
                let line = new_line(backend, p, q, &a, &spec, step.vertex, &mut rng)?;
                for (t, &c) in cols.iter().enumerate() {
                    full[i * n + c] = Some(line[t]);
                }
                rows.push(i);
            }
        }
    }
    Ok(full.into_iter().map(|c| c.expect("every cell is filled")).collect())
}

/// Exact completion over F_p to rank `gcr`.
pub fn chordal_complete_fp(x: &PartialMatrix<u64>, field: PrimeField, seed: u64) -> Result<CompletionResult> {
    let data = chordal_complete_with(&FpBackend { field }, x, seed)?;
    let (m, n) = (x.pattern().m(), x.pattern().n());
    let exact = x.entries().all(|(i, j, v)| data[i * n + j] == v);
    let rank = FpMatrix::from_vec(field, m, n, data.clone())?.rank();
    Ok(CompletionResult {
        rows: m,
        cols: n,
        entries: CompletedEntries::Fp {
            prime: field.modulus(),
            data,
        },
        rank,
        exact_match: Some(exact),
        max_deviation: None,
        method: "chordal".into(),
    })
}

/// Floating completion; known entries are kept, so the reported deviation
/// measures how far the rank claim is from holding exactly.
pub fn chordal_complete_real(x: &PartialMatrix<f64>, seed: u64) -> Result<CompletionResult> {
    let backend = RealBackend::default();
    let data = chordal_complete_with(&backend, x, seed)?;
    let (m, n) = (x.pattern().m(), x.pattern().n());
    let matrix = RealMatrix::new(m, n, &data)?;
    let rank = rank_float(&matrix, DEFAULT_RANK_TOL)?;
    // distance of each known entry from the best rank-`rank` approximation
    let svd = matrix.as_dmatrix().clone().svd(true, true);
    let mut s = svd.singular_values.clone();
    for (k, v) in s.iter_mut().enumerate() {
        if k >= rank {
            *v = 0.0;
        }
    }
    let approx = svd.u.expect("u") * nalgebra::DMatrix::from_diagonal(&s) * svd.v_t.expect("v_t");
    let dev = x.entries().map(|(i, j, v)| (approx[(i, j)] - v).abs()).fold(0.0, f64::max);
    Ok(CompletionResult {
        rows: m,
        cols: n,
        entries: CompletedEntries::Real { data },
        rank,
        exact_match: None,
        max_deviation: Some(dev),
        method: "chordal".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{max_biclique, random_chordal, triangular, BipartitePattern};
    use rand::Rng;

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn fit_column_counterexample() {
        let b = RealBackend::default();
        let m = [1.0, 1.0, 1.0, 1.0, 0.0, 1.0];
        let err = fit_column(&b, 3, 2, &m, &[Some(1.0), Some(2.0), None]).unwrap_err();
        assert!(matches!(err, Error::FitPrecondition(_)));
        assert_eq!(fit_column(&b, 3, 2, &m, &[None, None, None]).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn fit_column_stays_in_span() {
        let f = fp();
        let b = FpBackend { field: f };
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u = FpMatrix::random(f, 4, 2, &mut rng);
        let w = FpMatrix::random(f, 2, 3, &mut rng);
        let m = u.mul(&w).unwrap();
        let v = [Some(5), None, Some(9), None];
        let col = fit_column(&b, 4, 3, m.data(), &v).unwrap();
        assert_eq!((col[0], col[2]), (5, 9));
        let aug = FpMatrix::from_fn(f, 4, 4, |i, j| if j < 3 { m.get(i, j) } else { col[i] });
        assert_eq!(aug.rank(), 2);
    }

    #[test]
    fn triangular_completes_to_half() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 2..=8 {
            let x = PartialMatrix::from_fn(triangular(n), |_, _| f.random(&mut rng));
            let res = chordal_complete_fp(&x, f, 1).unwrap();
            assert_eq!(res.rank, n.div_ceil(2), "T_{n}");
            assert_eq!(res.exact_match, Some(true));
        }
    }

    #[test]
    fn full_block_is_unchanged() {
        let f = fp();
        let x = PartialMatrix::from_fn(BipartitePattern::complete(3, 3), |i, j| (3 * i + j * j + 1) as u64);
        let res = chordal_complete_fp(&x, f, 0).unwrap();
        let m = res.as_fp().unwrap();
        assert!(x.entries().all(|(i, j, v)| m.get(i, j) == v));
        assert!(res.rank <= 3);
    }

    #[test]
    fn k22_with_pendant_tree() {
        let f = fp();
        let g = BipartitePattern::new(4, 3, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let x = PartialMatrix::from_fn(g, |_, _| f.random(&mut rng));
        let res = chordal_complete_fp(&x, f, 3).unwrap();
        assert_eq!(res.rank, 2);
        assert_eq!(res.exact_match, Some(true));
    }

    #[test]
    fn non_chordal_is_refused() {
        let x = PartialMatrix::from_fn(crate::pattern::cube(), |_, _| 1u64);
        assert!(matches!(chordal_complete_fp(&x, fp(), 0), Err(Error::NotChordal)));
    }

    #[test]
    fn degenerate_data_reports_vanishing_minor() {
        // [[1, ?], [0, 1]] has no rank-1 completion: the known 1x1 minor at (1, 0) vanishes
        let x = PartialMatrix::from_entries(2, 2, [(0, 0, 1u64), (1, 0, 0), (1, 1, 1)]).unwrap();
        let err = chordal_complete_fp(&x, fp(), 0);
        assert!(matches!(err, Err(Error::VanishingMinor { .. })), "{err:?}");
    }

    #[test]
    fn random_chordal_fp_and_real() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for t in 0..40 {
            let g = random_chordal(7, 7, &mut rng);
            let r = max_biclique(&g, true, u64::MAX).unwrap().size;
            let x = PartialMatrix::from_fn(g.clone(), |_, _| f.random(&mut rng));
            let res = chordal_complete_fp(&x, f, t).unwrap();
            assert_eq!(res.rank, r, "{g:?}");
            assert_eq!(res.exact_match, Some(true));
            let y = PartialMatrix::from_fn(g.clone(), |_, _| rng.random_range(-1.0..1.0));
            let res = chordal_complete_real(&y, t).unwrap();
            assert_eq!(res.rank, r, "{g:?}");
            assert!(res.max_deviation.unwrap() < 1e-8);
        }
    }
}
