//! Rank of the coordinate projection of a tangent space to the rank-`r` variety.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffmat::{random_ranked_point_with, random_sym_ranked_point_with, FpMatrix, PrimeField};
use crate::pattern::{BipartitePattern, SymmetricPattern};

/// One randomized tangent-space evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentReport {
    pub r: usize,
    pub seed: u64,
    /// Dimension of the projected tangent space.
    pub dim_image: usize,
    /// Dimension of the tangent space itself.
    pub tangent_dim: usize,
    pub surjective: bool,
    pub injective: bool,
    pub rank_c: usize,
    pub rank_c_non_e: usize,
}

impl TangentReport {
    fn from_ranks(r: usize, seed: u64, coords: usize, edges: usize, rank_c: usize, rank_c_non_e: usize) -> Self {
        let non_edges = coords - edges;
        let dim_image = edges + rank_c_non_e - rank_c;
        Self {
            r,
            seed,
            dim_image,
            tangent_dim: coords - rank_c,
            surjective: dim_image == edges,
            injective: rank_c_non_e == non_edges,
            rank_c,
            rank_c_non_e,
        }
    }
}

/// The random stream used for rank `r` under `seed`.
pub(crate) fn point_rng(seed: u64, r: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(r as u64);
    rng
}

/// Tangent space at a random rank-`r` point `M` is `{A : c_i A v_j = 0}`; its
/// image under the projection to the known entries has dimension
/// `|E| - rank C + rank C_nonE`, where `C` is the constraint matrix.
pub fn tangent_projection(g: &BipartitePattern, r: usize, seed: u64, field: PrimeField) -> Result<TangentReport> {
    let (m, n) = (g.m(), g.n());
    if r > m.min(n) {
        return Err(Error::ShapeMismatch(format!("rank {r} exceeds min({m}, {n})")));
    }
    let point = random_ranked_point_with(field, m, n, r, &mut point_rng(seed, r))?;
    let c = constraint_matrix(field, m, n, &point.cokernel, &point.kernel);
    let rank_c = c.rank();
    let non_edges: Vec<usize> = g.non_edges().iter().map(|&(a, b)| a * n + b).collect();
    let rank_c_non_e = c.select_columns(&non_edges).rank();
    Ok(TangentReport::from_ranks(r, seed, m * n, g.num_edges(), rank_c, rank_c_non_e))
}

/// Row `(i, j)`, column `(a, b)` holds `c_i[a] * v_j[b]`; columns are row-major cells.
pub(crate) fn constraint_matrix(field: PrimeField, m: usize, n: usize, cokernel: &[Vec<u64>], kernel: &[Vec<u64>]) -> FpMatrix {
    let k = kernel.len();
    FpMatrix::from_fn(field, cokernel.len() * k, m * n, |row, col| {
        field.mul(cokernel[row / k][col / n], kernel[row % k][col % n])
    })
}

/// Index of `{a, b}` among symmetric coordinates: diagonal first, then
/// off-diagonal pairs `a < b` in lexicographic order.
pub fn sym_coordinate(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    if a == b {
        a
    } else {
        // pairs before row a: sum over t < a of (n - 1 - t)
        n + a * (2 * n - a - 1) / 2 + (b - a - 1)
    }
}

/// Symmetric analogue: at a random symmetric rank-`r` point with kernel basis
/// `v_1..v_{n-r}`, the tangent space is `{B : v_i^T B v_j = 0, i <= j}`.
pub fn sym_tangent_projection(g: &SymmetricPattern, r: usize, seed: u64, field: PrimeField) -> Result<TangentReport> {
    let n = g.n();
    if r > n {
        return Err(Error::ShapeMismatch(format!("rank {r} exceeds {n}")));
    }
    let point = random_sym_ranked_point_with(field, n, r, &mut point_rng(seed, r))?;
    let c = sym_constraint_matrix(field, n, &point.kernel);
    let rank_c = c.rank();
    let non_edges: Vec<usize> = g.non_edges().iter().map(|&(a, b)| sym_coordinate(n, a, b)).collect();
    let rank_c_non_e = c.select_columns(&non_edges).rank();
    Ok(TangentReport::from_ranks(r, seed, g.num_coordinates(), g.num_edges(), rank_c, rank_c_non_e))
}

pub(crate) fn sym_constraint_matrix(field: PrimeField, n: usize, kernel: &[Vec<u64>]) -> FpMatrix {
    let pairs: Vec<(usize, usize)> = (0..kernel.len())
        .flat_map(|i| (i..kernel.len()).map(move |j| (i, j)))
        .collect();
    let coords: Vec<(usize, usize)> = (0..n)
        .map(|a| (a, a))
        .chain((0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
        .collect();
    FpMatrix::from_fn(field, pairs.len(), coords.len(), |row, col| {
        let (vi, vj) = (&kernel[pairs[row].0], &kernel[pairs[row].1]);
        let (a, b) = coords[col];
        if a == b {
            field.mul(vi[a], vj[a])
        } else {
            field.add(field.mul(vi[a], vj[b]), field.mul(vi[b], vj[a]))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{cube, SymmetricPattern};

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn k22_examples() {
        let k22 = BipartitePattern::complete(2, 2);
        let t1 = tangent_projection(&k22, 1, 7, f()).unwrap();
        assert_eq!(t1.dim_image, 3);
        assert!(!t1.surjective);
        assert!(tangent_projection(&k22, 2, 7, f()).unwrap().surjective);
    }

    #[test]
    fn cube_needs_rank_two() {
        assert!(!tangent_projection(&cube(), 1, 1, f()).unwrap().surjective);
        let t2 = tangent_projection(&cube(), 2, 1, f()).unwrap();
        assert!(t2.surjective);
        // |E| = 12 = dim of rank-2 4x4 matrices, so the projection is a bijection
        assert!(t2.injective);
    }

    #[test]
    fn tangent_dimension_is_generic() {
        for (m, n) in [(3, 5), (4, 4), (6, 2)] {
            for r in 0..=m.min(n) {
                let t = tangent_projection(&BipartitePattern::empty(m, n), r, 3, f()).unwrap();
                assert_eq!(t.tangent_dim, r * (m + n - r));
                assert_eq!(t.rank_c, (m - r) * (n - r));
            }
        }
    }

    #[test]
    fn symmetric_coordinates_are_ordered() {
        let n = 4;
        let mut seen = vec![false; n * (n + 1) / 2];
        for a in 0..n {
            assert_eq!(sym_coordinate(n, a, a), a);
            for b in a..n {
                let k = sym_coordinate(n, a, b);
                assert_eq!(k, sym_coordinate(n, b, a));
                assert!(!std::mem::replace(&mut seen[k], true));
            }
        }
        assert_eq!(sym_coordinate(n, 0, 1), 4);
        assert_eq!(sym_coordinate(n, 2, 3), 9);
    }

    #[test]
    fn symmetric_tangent_dimension() {
        for n in 1..=8 {
            for r in 1..=n {
                let t = sym_tangent_projection(&SymmetricPattern::empty(n), r, 11, f()).unwrap();
                assert_eq!(t.tangent_dim, n * r - r * (r - 1) / 2, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn symmetric_complete_is_full_rank() {
        let k3 = SymmetricPattern::complete(3);
        assert!(!sym_tangent_projection(&k3, 2, 0, f()).unwrap().surjective);
        assert!(sym_tangent_projection(&k3, 3, 0, f()).unwrap().surjective);
    }
}
