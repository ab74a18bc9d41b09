use std::fmt;

use serde::{Deserialize, Serialize};

use super::bits::BitSet;
use crate::error::{Error, Result};

/// A vertex of a bipartite pattern: a row or a column of the partial matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Vertex {
    Row(usize),
    Col(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Row(i) => write!(f, "row {i}"),
            Vertex::Col(j) => write!(f, "col {j}"),
        }
    }
}

/// Known entries of an `m x n` partial matrix, as a bipartite graph on rows and columns.
///
/// Indices are 0-based. Edges are kept in a dense row-major mask, so
/// [`edges`](Self::edges) always comes back sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartitePattern {
    m: usize,
    n: usize,
    mask: Vec<bool>,
    num_edges: usize,
}

impl fmt::Debug for BipartitePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BipartitePattern({}x{}, {} edges)\n{}", self.m, self.n, self.num_edges, self.to_mask_string())
    }
}

impl BipartitePattern {
    pub fn new(m: usize, n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut p = Self::empty(m, n);
        for (i, j) in edges {
            if i >= m || j >= n {
                return Err(Error::InvalidPattern(format!("edge ({i}, {j}) outside {m}x{n}")));
            }
            if p.mask[i * n + j] {
                return Err(Error::InvalidPattern(format!("duplicate edge ({i}, {j})")));
            }
            p.mask[i * n + j] = true;
            p.num_edges += 1;
        }
        Ok(p)
    }

    pub fn from_mask(m: usize, n: usize, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != m * n {
            return Err(Error::InvalidPattern(format!("mask of length {} for {m}x{n}", mask.len())));
        }
        let num_edges = mask.iter().filter(|&&b| b).count();
        Ok(Self { m, n, mask, num_edges })
    }

    pub fn from_fn(m: usize, n: usize, mut known: impl FnMut(usize, usize) -> bool) -> Self {
        let mut mask = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                mask.push(known(i, j));
            }
        }
        let num_edges = mask.iter().filter(|&&b| b).count();
        Self { m, n, mask, num_edges }
    }

    pub fn empty(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            mask: vec![false; m * n],
            num_edges: 0,
        }
    }

    pub fn complete(m: usize, n: usize) -> Self {
        Self::from_fn(m, n, |_, _| true)
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn num_non_edges(&self) -> usize {
        self.m * self.n - self.num_edges
    }

    pub fn num_vertices(&self) -> usize {
        self.m + self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.m && j < self.n && self.mask[i * self.n + j]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.cells(true)
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        self.cells(false)
    }

    fn cells(&self, known: bool) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in 0..self.n {
                if self.mask[i * self.n + j] == known {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Position of `(i, j)` in [`edges`](Self::edges), if it is an edge.
    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        if !self.has_edge(i, j) {
            return None;
        }
        let flat = i * self.n + j;
        Some(self.mask[..flat].iter().filter(|&&b| b).count())
    }

    pub fn row_neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.mask[i * self.n + j]).collect()
    }

    pub fn col_neighbors(&self, j: usize) -> Vec<usize> {
        (0..self.m).filter(|&i| self.mask[i * self.n + j]).collect()
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        match v {
            Vertex::Row(i) => self.row_neighbors(i).into_iter().map(Vertex::Col).collect(),
            Vertex::Col(j) => self.col_neighbors(j).into_iter().map(Vertex::Row).collect(),
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        match v {
            Vertex::Row(i) => (0..self.n).filter(|&j| self.mask[i * self.n + j]).count(),
            Vertex::Col(j) => (0..self.m).filter(|&i| self.mask[i * self.n + j]).count(),
        }
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        match v {
            Vertex::Row(i) => i < self.m,
            Vertex::Col(j) => j < self.n,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.m).map(Vertex::Row).chain((0..self.n).map(Vertex::Col))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.m, |i, j| self.has_edge(j, i))
    }

    pub fn with_edge(&self, i: usize, j: usize) -> Result<Self> {
        if i >= self.m || j >= self.n {
            return Err(Error::InvalidVertex(format!("edge ({i}, {j}) outside {}x{}", self.m, self.n)));
        }
        if self.has_edge(i, j) {
            return Err(Error::InvalidVertex(format!("edge ({i}, {j}) already present")));
        }
        let mut p = self.clone();
        p.mask[i * self.n + j] = true;
        p.num_edges += 1;
        Ok(p)
    }

    pub fn without_edge(&self, i: usize, j: usize) -> Result<Self> {
        if !self.has_edge(i, j) {
            return Err(Error::InvalidVertex(format!("({i}, {j}) is not an edge")));
        }
        let mut p = self.clone();
        p.mask[i * self.n + j] = false;
        p.num_edges -= 1;
        Ok(p)
    }

    /// Removes a vertex; later indices on its side shift down by one.
    pub fn delete_vertex(&self, v: Vertex) -> Result<Self> {
        if !self.contains_vertex(v) {
            return Err(Error::InvalidVertex(format!("{v} not in a {}x{} pattern", self.m, self.n)));
        }
        let rows: Vec<usize> = (0..self.m).filter(|&i| v != Vertex::Row(i)).collect();
        let cols: Vec<usize> = (0..self.n).filter(|&j| v != Vertex::Col(j)).collect();
        Ok(self.induced(&rows, &cols))
    }

    /// Induced subpattern on the given rows and columns, in the given order.
    pub fn induced(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.has_edge(rows[i], cols[j]))
    }

    pub(crate) fn row_bits(&self) -> Vec<BitSet> {
        (0..self.m)
            .map(|i| {
                let mut b = BitSet::new(self.n);
                for j in 0..self.n {
                    if self.mask[i * self.n + j] {
                        b.insert(j);
                    }
                }
                b
            })
            .collect()
    }

    /// ASCII mask: one line per row, `*` for a known entry and `?` otherwise.
    pub fn to_mask_string(&self) -> String {
        let mut s = String::with_capacity(self.m * (self.n + 1));
        for i in 0..self.m {
            for j in 0..self.n {
                s.push(if self.mask[i * self.n + j] { '*' } else { '?' });
            }
            s.push('\n');
        }
        s
    }

    pub fn from_mask_str(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let n = lines.first().map_or(0, |l| l.chars().filter(|c| !c.is_whitespace()).count());
        let mut mask = Vec::with_capacity(lines.len() * n);
        for (i, line) in lines.iter().enumerate() {
            let row: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
            if row.len() != n {
                return Err(Error::Parse(format!("mask row {i} has {} cells, expected {n}", row.len())));
            }
            for c in row {
                match c {
                    '*' => mask.push(true),
                    '?' => mask.push(false),
                    other => return Err(Error::Parse(format!("unexpected mask character `{other}`"))),
                }
            }
        }
        Self::from_mask(lines.len(), n, mask)
    }
}

/// An induced subpattern together with the original indices of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subpattern {
    pub pattern: BipartitePattern,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Subpattern {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty() && self.cols.is_empty()
    }
}
