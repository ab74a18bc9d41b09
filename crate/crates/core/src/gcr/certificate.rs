//! Partition certificates, the circulant construction, and the clique-sum and
//! vertex-deletion rules.

use serde::{Deserialize, Serialize};

use super::engine::{gcr, GcrOptions};
use crate::error::{Error, Result};
use crate::pattern::{circulant, BipartitePattern, Vertex};

/// A block pair whose non-edge count is not exactly one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockViolation {
    pub row_block: usize,
    pub col_block: usize,
    pub non_edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub valid: bool,
    pub violations: Vec<BlockViolation>,
}

fn check_partition(blocks: &[Vec<usize>], size: usize, expected: usize, what: &str) -> Result<Vec<usize>> {
    if blocks.len() != expected {
        return Err(Error::Certificate(format!(
            "{what} partition has {} blocks, expected {expected}",
            blocks.len()
        )));
    }
    let mut owner = vec![usize::MAX; size];
    if expected == 0 {
        // r equals this side's size: no blocks and no block pairs to check
        return Ok(owner);
    }
    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::Certificate(format!("{what} block {b} is empty")));
        }
        for &x in block {
            if x >= size || owner[x] != usize::MAX {
                return Err(Error::Certificate(format!("{what} index {x} is out of range or repeated")));
            }
            owner[x] = b;
        }
    }
    if owner.contains(&usize::MAX) {
        return Err(Error::Certificate(format!("{what} partition misses an index")));
    }
    Ok(owner)
}

/// Checks that every block pair `P_i x Q_j` contains exactly one non-edge.
///
/// Since `P` and `Q` partition the rows and columns, every non-edge lies in
/// some block pair. A valid certificate shows `gcr(g) = r`.
pub fn verify_partition_certificate(
    g: &BipartitePattern,
    r: usize,
    row_blocks: &[Vec<usize>],
    col_blocks: &[Vec<usize>],
) -> Result<CertificateCheck> {
    let (m, n) = (g.m(), g.n());
    if r > m.min(n) {
        return Err(Error::Certificate(format!("rank {r} exceeds min({m}, {n})")));
    }
    let expected = r * (m + n - r);
    if g.num_edges() != expected {
        return Err(Error::EdgeCount {
            expected,
            actual: g.num_edges(),
        });
    }
    let row_owner = check_partition(row_blocks, m, m - r, "row")?;
    let col_owner = check_partition(col_blocks, n, n - r, "column")?;
    let mut cells = vec![Vec::new(); row_blocks.len() * col_blocks.len()];
    if cells.is_empty() {
        return Ok(CertificateCheck {
            valid: g.num_non_edges() == 0,
            violations: vec![],
        });
    }
    for (i, j) in g.non_edges() {
        cells[row_owner[i] * col_blocks.len() + col_owner[j]].push((i, j));
    }
    let violations: Vec<BlockViolation> = cells
        .into_iter()
        .enumerate()
        .filter(|(_, ne)| ne.len() != 1)
        .map(|(k, non_edges)| BlockViolation {
            row_block: k / col_blocks.len(),
            col_block: k % col_blocks.len(),
            non_edges,
        })
        .collect();
    Ok(CertificateCheck {
        valid: violations.is_empty(),
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CirculantCertificate {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub r: usize,
    pub row_blocks: Vec<Vec<usize>>,
    pub col_blocks: Vec<Vec<usize>>,
}

impl CirculantCertificate {
    pub fn pattern(&self) -> BipartitePattern {
        circulant(self.n, self.l)
    }
}

/// Partitions certifying `gcr(G(n, n - k^2/n)) = n - k` when `k | n` and `n | k^2`.
///
/// Rows: `P_i = {i, i+k, ...}`. Columns: `Q_ab = {ak + b + q k^2/n}` for
/// `a < n/k`, `b < k^2/n`, `q < n/k` (all 0-based).
pub fn build_circulant_certificate(n: usize, k: usize) -> Result<CirculantCertificate> {
    if n == 0 || k == 0 || !n.is_multiple_of(k) || !(k * k).is_multiple_of(n) {
        return Err(Error::Certificate(format!("need k | n and n | k^2, got n = {n}, k = {k}")));
    }
    let d = k * k / n;
    let h = n / k;
    if d > n {
        return Err(Error::Certificate(format!("k = {k} exceeds n = {n}")));
    }
    let row_blocks = (0..k).map(|i| (0..h).map(|p| i + p * k).collect()).collect();
    let col_blocks = (0..h)
        .flat_map(|a| (0..d).map(move |b| (0..h).map(|q| a * k + b + q * d).collect()))
        .collect();
    Ok(CirculantCertificate {
        n,
        k,
        l: n - d,
        r: n - k,
        row_blocks,
        col_blocks,
    })
}

/// Combined rank of a clique sum along `K_{glue_m, glue_n}`, when the summand
/// ranks reach the size of the glue; `None` when that hypothesis fails.
pub fn clique_sum_combine(r1: usize, r2: usize, glue_m: usize, glue_n: usize) -> Option<usize> {
    let r = r1.max(r2);
    (r >= glue_m.max(glue_n)).then_some(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeletionOutcome {
    /// `gcr(G - v) >= deg v` and the two ranks agree.
    Held { gcr: usize },
    /// The hypothesis `gcr(G - v) >= deg v` fails; nothing is claimed.
    HypothesisUnmet { degree: usize, gcr_deleted: usize },
    /// Hypothesis met but the ranks differ: a counterexample or an engine fault.
    Violated { gcr: usize, gcr_deleted: usize },
}

/// Deleting a degree-`k` vertex keeps the generic completion rank when the
/// smaller pattern already has rank at least `k`.
pub fn vertex_deletion_check(g: &BipartitePattern, v: Vertex, opts: &GcrOptions) -> Result<DeletionOutcome> {
    let degree = g.degree(v);
    let smaller = g.delete_vertex(v)?;
    let gcr_deleted = gcr(&smaller, opts)?.gcr;
    if gcr_deleted < degree {
        return Ok(DeletionOutcome::HypothesisUnmet { degree, gcr_deleted });
    }
    let full = gcr(g, opts)?.gcr;
    Ok(if full == gcr_deleted {
        DeletionOutcome::Held { gcr: full }
    } else {
        DeletionOutcome::Violated {
            gcr: full,
            gcr_deleted,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{cube, tree_path};

    #[test]
    fn example_partition() {
        let ok = verify_partition_certificate(&cube(), 2, &[vec![0, 1], vec![2, 3]], &[vec![0, 2], vec![1, 3]]).unwrap();
        assert!(ok.valid);
        let bad = verify_partition_certificate(&cube(), 2, &[vec![0, 1], vec![2, 3]], &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(!bad.valid);
        assert_eq!(bad.violations[0].non_edges, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn vacuous_and_malformed() {
        let k = BipartitePattern::complete(3, 4);
        assert!(verify_partition_certificate(&k, 3, &[], &[vec![0, 1, 2, 3]]).unwrap().valid);
        assert!(matches!(
            verify_partition_certificate(&cube(), 1, &[], &[]),
            Err(Error::EdgeCount { expected: 7, actual: 12 })
        ));
        assert!(verify_partition_certificate(&cube(), 2, &[vec![0, 1], vec![1, 3]], &[vec![0, 2], vec![1, 3]]).is_err());
    }

    #[test]
    fn circulant_certificates() {
        for (n, k, l) in [(4, 2, 3), (8, 4, 6), (9, 3, 8), (16, 4, 15), (16, 8, 12), (18, 6, 16)] {
            let c = build_circulant_certificate(n, k).unwrap();
            assert_eq!((c.l, c.r), (l, n - k));
            let check = verify_partition_certificate(&c.pattern(), c.r, &c.row_blocks, &c.col_blocks).unwrap();
            assert!(check.valid, "n={n} k={k}: {:?}", check.violations);
        }
        assert!(build_circulant_certificate(6, 4).is_err());
        assert!(build_circulant_certificate(6, 3).is_err());
    }

    #[test]
    fn combine_rule() {
        assert_eq!(clique_sum_combine(2, 2, 2, 2), Some(2));
        assert_eq!(clique_sum_combine(3, 3, 2, 2), Some(3));
        assert_eq!(clique_sum_combine(2, 2, 1, 3), None);
        assert_eq!(clique_sum_combine(1, 2, 0, 0), Some(2));
    }

    #[test]
    fn deletion_rule() {
        let opts = GcrOptions::default();
        let path = tree_path(3, 3).unwrap();
        assert_eq!(
            vertex_deletion_check(&path, Vertex::Row(0), &opts).unwrap(),
            DeletionOutcome::Held { gcr: 1 }
        );
        let q = cube().delete_vertex(Vertex::Row(0)).unwrap();
        assert!(matches!(
            vertex_deletion_check(&cube(), Vertex::Row(0), &opts).unwrap(),
            DeletionOutcome::HypothesisUnmet { degree: 3, .. }
        ));
        assert_eq!(q.num_vertices(), 7);
        let pendant = BipartitePattern::from_fn(4, 3, |i, j| i < 3 || j == 0);
        assert_eq!(
            vertex_deletion_check(&pendant, Vertex::Row(3), &opts).unwrap(),
            DeletionOutcome::Held { gcr: 3 }
        );
    }
}
