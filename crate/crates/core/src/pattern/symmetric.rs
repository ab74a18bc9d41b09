use std::fmt;

use super::bipartite::BipartitePattern;
use crate::error::{Error, Result};

/// Known entries of a symmetric `n x n` partial matrix: a semisimple graph
/// where `{i, i}` is a loop (known diagonal entry).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymmetricPattern {
    n: usize,
    mask: Vec<bool>,
    num_edges: usize,
}

impl fmt::Debug for SymmetricPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricPattern(n={}, {} edges) {:?}", self.n, self.num_edges, self.edges())
    }
}

impl SymmetricPattern {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut p = Self::empty(n);
        for (a, b) in edges {
            let (i, j) = (a.min(b), a.max(b));
            if j >= n {
                return Err(Error::InvalidPattern(format!("edge {{{a}, {b}}} outside {n} vertices")));
            }
            if p.mask[i * n + j] {
                return Err(Error::InvalidPattern(format!("duplicate edge {{{a}, {b}}}")));
            }
            p.set(i, j, true);
        }
        Ok(p)
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            mask: vec![false; n * n],
            num_edges: 0,
        }
    }

    pub fn from_fn(n: usize, mut known: impl FnMut(usize, usize) -> bool) -> Self {
        let mut p = Self::empty(n);
        for i in 0..n {
            for j in i..n {
                if known(i, j) {
                    p.set(i, j, true);
                }
            }
        }
        p
    }

    fn set(&mut self, i: usize, j: usize, value: bool) {
        let n = self.n;
        if self.mask[i * n + j] != value {
            if value {
                self.num_edges += 1;
            } else {
                self.num_edges -= 1;
            }
        }
        self.mask[i * n + j] = value;
        self.mask[j * n + i] = value;
    }

    /// `K_n°`: every entry known.
    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    /// Number of symmetric coordinates `n(n+1)/2`.
    pub fn num_coordinates(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.mask[i * self.n + j]
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.has_edge(i, i)
    }

    /// Edges `(i, j)` with `i <= j`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges);
        for i in 0..self.n {
            for j in i..self.n {
                if self.mask[i * self.n + j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                if !self.mask[i * self.n + j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Neighbors of `v` other than `v` itself.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| u != v && self.mask[v * self.n + u]).collect()
    }

    pub fn with_edge(&self, a: usize, b: usize) -> Result<Self> {
        if a >= self.n || b >= self.n {
            return Err(Error::InvalidVertex(format!("edge {{{a}, {b}}} outside {} vertices", self.n)));
        }
        if self.has_edge(a, b) {
            return Err(Error::InvalidVertex(format!("edge {{{a}, {b}}} already present")));
        }
        let mut p = self.clone();
        p.set(a.min(b), a.max(b), true);
        Ok(p)
    }

    pub fn without_edge(&self, a: usize, b: usize) -> Result<Self> {
        if !self.has_edge(a, b) {
            return Err(Error::InvalidVertex(format!("{{{a}, {b}}} is not an edge")));
        }
        let mut p = self.clone();
        p.set(a.min(b), a.max(b), false);
        Ok(p)
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        if v >= self.n {
            return Err(Error::InvalidVertex(format!("vertex {v} not among {} vertices", self.n)));
        }
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        Ok(self.induced(&keep))
    }

    pub fn induced(&self, vertices: &[usize]) -> Self {
        Self::from_fn(vertices.len(), |i, j| self.has_edge(vertices[i], vertices[j]))
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &SymmetricPattern) -> Self {
        let k = self.n;
        Self::from_fn(k + other.n, |i, j| match (i < k, j < k) {
            (true, true) => self.has_edge(i, j),
            (false, false) => other.has_edge(i - k, j - k),
            _ => false,
        })
    }

    /// Join: disjoint union plus every edge between the two vertex sets.
    pub fn join(&self, other: &SymmetricPattern) -> Self {
        let k = self.n;
        Self::from_fn(k + other.n, |i, j| match (i < k, j < k) {
            (true, true) => self.has_edge(i, j),
            (false, false) => other.has_edge(i - k, j - k),
            _ => true,
        })
    }

    /// Adds a vertex adjacent to every other vertex and to itself.
    pub fn with_looped_suspension(&self) -> Self {
        let k = self.n;
        Self::from_fn(k + 1, |i, j| j == k || self.has_edge(i, j))
    }

    /// Bipartite pattern on two copies of the vertex set, `(i, j)` known iff `{i, j}` is.
    pub fn double_cover(&self) -> BipartitePattern {
        BipartitePattern::from_fn(self.n, self.n, |i, j| self.has_edge(i, j))
    }
}
