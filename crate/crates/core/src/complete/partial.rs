use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffmat::{FpMatrix, PrimeField, RealMatrix};
use crate::pattern::{BipartitePattern, SymmetricPattern};

/// Values on the known entries of a rectangular pattern, stored in the order
/// of [`BipartitePattern::edges`].
#[derive(Clone, Debug, PartialEq)]
pub struct PartialMatrix<T> {
    pattern: BipartitePattern,
    values: Vec<T>,
}

impl<T: Copy> PartialMatrix<T> {
    pub fn new(pattern: BipartitePattern, values: Vec<T>) -> Result<Self> {
        if values.len() != pattern.num_edges() {
            return Err(Error::ShapeMismatch(format!(
                "{} values for {} known entries",
                values.len(),
                pattern.num_edges()
            )));
        }
        Ok(Self { pattern, values })
    }

    /// Builds the pattern from the keys; each cell may appear once.
    pub fn from_entries(m: usize, n: usize, entries: impl IntoIterator<Item = (usize, usize, T)>) -> Result<Self> {
        let mut cells: Vec<(usize, usize, T)> = entries.into_iter().collect();
        cells.sort_by_key(|&(i, j, _)| (i, j));
        let pattern = BipartitePattern::new(m, n, cells.iter().map(|&(i, j, _)| (i, j)))?;
        Ok(Self {
            pattern,
            values: cells.into_iter().map(|(_, _, v)| v).collect(),
        })
    }

    /// Reads the known entries off a full matrix.
    pub fn from_fn(pattern: BipartitePattern, mut value: impl FnMut(usize, usize) -> T) -> Self {
        let values = pattern.edges().into_iter().map(|(i, j)| value(i, j)).collect();
        Self { pattern, values }
    }

    pub fn pattern(&self) -> &BipartitePattern {
        &self.pattern
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> Option<T> {
        self.pattern.edge_index(i, j).map(|k| self.values[k])
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.pattern.edges().into_iter().zip(&self.values).map(|((i, j), &v)| (i, j, v))
    }

    /// Dense row-major view with `None` for unknown cells.
    pub fn to_dense(&self) -> Vec<Option<T>> {
        let mut out = vec![None; self.pattern.m() * self.pattern.n()];
        for (i, j, v) in self.entries() {
            out[i * self.pattern.n() + j] = Some(v);
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let entries: Vec<(usize, usize, T)> = self.entries().map(|(i, j, v)| (j, i, v)).collect();
        Self::from_entries(self.pattern.n(), self.pattern.m(), entries).expect("transpose keeps entries distinct")
    }
}

/// Values on the known entries of a symmetric pattern, in the order of
/// [`SymmetricPattern::edges`] (pairs `i <= j`).
#[derive(Clone, Debug, PartialEq)]
pub struct SymPartialMatrix<T> {
    pattern: SymmetricPattern,
    values: Vec<T>,
}

impl<T: Copy> SymPartialMatrix<T> {
    pub fn new(pattern: SymmetricPattern, values: Vec<T>) -> Result<Self> {
        if values.len() != pattern.num_edges() {
            return Err(Error::ShapeMismatch(format!(
                "{} values for {} known entries",
                values.len(),
                pattern.num_edges()
            )));
        }
        Ok(Self { pattern, values })
    }

    pub fn from_fn(pattern: SymmetricPattern, mut value: impl FnMut(usize, usize) -> T) -> Self {
        let values = pattern.edges().into_iter().map(|(i, j)| value(i, j)).collect();
        Self { pattern, values }
    }

    pub fn pattern(&self) -> &SymmetricPattern {
        &self.pattern
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.pattern.edges().into_iter().zip(&self.values).map(|((i, j), &v)| (i, j, v))
    }
}

/// The entries of a completed matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "field", rename_all = "lowercase")]
pub enum CompletedEntries {
    Fp { prime: u64, data: Vec<u64> },
    Real { data: Vec<f64> },
}

/// A full matrix agreeing with a partial one, with the evidence for it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompletionResult {
    pub rows: usize,
    pub cols: usize,
    pub entries: CompletedEntries,
    pub rank: usize,
    /// Over F_p: whether every known entry is reproduced exactly.
    pub exact_match: Option<bool>,
    /// Over the reals: largest deviation on a known entry.
    pub max_deviation: Option<f64>,
    pub method: String,
}

impl CompletionResult {
    pub fn as_fp(&self) -> Option<FpMatrix> {
        match &self.entries {
            CompletedEntries::Fp { prime, data } => {
                let field = PrimeField::new(*prime).ok()?;
                FpMatrix::from_vec(field, self.rows, self.cols, data.clone()).ok()
            }
            CompletedEntries::Real { .. } => None,
        }
    }

    pub fn as_real(&self) -> Option<RealMatrix> {
        match &self.entries {
            CompletedEntries::Real { data } => RealMatrix::new(self.rows, self.cols, data).ok(),
            CompletedEntries::Fp { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_follow_edge_order() {
        let p = PartialMatrix::from_entries(2, 2, [(1, 0, 5), (0, 1, 7)]).unwrap();
        assert_eq!(p.values(), &[7, 5]);
        assert_eq!(p.get(1, 0), Some(5));
        assert_eq!(p.get(0, 0), None);
        let t = p.transpose();
        assert_eq!(t.get(0, 1), Some(5));
        assert!(PartialMatrix::from_entries(2, 2, [(0, 0, 1), (0, 0, 2)]).is_err());
        assert!(PartialMatrix::new(BipartitePattern::complete(1, 2), vec![1]).is_err());
    }
}
