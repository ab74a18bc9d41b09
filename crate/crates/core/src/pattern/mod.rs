//! Patterns of known entries and the combinatorics around them.
//!
//! A rectangular pattern is a bipartite graph on rows and columns; a symmetric
//! pattern is a graph with loops. All indices are 0-based.

mod bipartite;
pub(crate) mod bits;
mod chordal;
mod generate;
mod ops;
mod symmetric;

use serde::{Deserialize, Serialize};

pub use bipartite::{BipartitePattern, Subpattern, Vertex};
pub use chordal::{
    bisimplicial_elimination, find_bisimplicial_edge, is_chordal_bipartite, random_chordal, Chordality,
    EliminationStep, EliminationTrace,
};
pub use generate::{
    antidiagonal, circulant, crown, cube, cycle, generate, join_family, knk1, random_tree, tree_path, tree_star,
    triangular, FAMILIES,
};
pub use ops::{
    clique_sum, first_empty_core, k_core, max_biclique, Biclique, CliqueSum, Glue, DEFAULT_BICLIQUE_BUDGET,
};
pub use symmetric::SymmetricPattern;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    Bipartite(BipartitePattern),
    Symmetric(SymmetricPattern),
}

impl Pattern {
    pub fn num_edges(&self) -> usize {
        match self {
            Pattern::Bipartite(p) => p.num_edges(),
            Pattern::Symmetric(p) => p.num_edges(),
        }
    }

    pub fn as_bipartite(&self) -> Option<&BipartitePattern> {
        match self {
            Pattern::Bipartite(p) => Some(p),
            Pattern::Symmetric(_) => None,
        }
    }

    pub fn as_symmetric(&self) -> Option<&SymmetricPattern> {
        match self {
            Pattern::Symmetric(p) => Some(p),
            Pattern::Bipartite(_) => None,
        }
    }
}

impl From<BipartitePattern> for Pattern {
    fn from(p: BipartitePattern) -> Self {
        Pattern::Bipartite(p)
    }
}

impl From<SymmetricPattern> for Pattern {
    fn from(p: SymmetricPattern) -> Self {
        Pattern::Symmetric(p)
    }
}

/// Edits accepted by [`mutate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Mutation {
    /// Bipartite patterns take a [`Vertex`]; symmetric ones a plain index in `Vertex::Row`.
    DeleteVertex { vertex: Vertex },
    AddEdge { i: usize, j: usize },
    AddLoopedSuspension,
    /// Symmetric only.
    SymJoin { other: Vec<(usize, usize)>, other_n: usize },
}

pub fn mutate(p: &Pattern, op: &Mutation) -> Result<Pattern> {
    match (p, op) {
        (Pattern::Bipartite(g), Mutation::DeleteVertex { vertex }) => Ok(g.delete_vertex(*vertex)?.into()),
        (Pattern::Symmetric(g), Mutation::DeleteVertex { vertex: Vertex::Row(v) }) => {
            Ok(g.delete_vertex(*v)?.into())
        }
        (Pattern::Bipartite(g), Mutation::AddEdge { i, j }) => Ok(g.with_edge(*i, *j)?.into()),
        (Pattern::Symmetric(g), Mutation::AddEdge { i, j }) => Ok(g.with_edge(*i, *j)?.into()),
        (Pattern::Symmetric(g), Mutation::AddLoopedSuspension) => Ok(g.with_looped_suspension().into()),
        (Pattern::Symmetric(g), Mutation::SymJoin { other, other_n }) => {
            let h = SymmetricPattern::new(*other_n, other.iter().copied())?;
            Ok(g.join(&h).into())
        }
        _ => Err(Error::InvalidVertex(format!("{op:?} does not apply to this pattern kind"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutation_examples() {
        let cube: Pattern = cube().into();
        let q = mutate(&cube, &Mutation::DeleteVertex { vertex: Vertex::Row(2) }).unwrap();
        let q = q.as_bipartite().unwrap();
        assert_eq!(q.num_vertices(), 7);
        assert_eq!(q.num_edges(), 9);

        let pair = SymmetricPattern::new(2, [(0, 0), (1, 1)]).unwrap();
        let g2 = mutate(
            &pair.clone().into(),
            &Mutation::SymJoin {
                other: pair.edges(),
                other_n: 2,
            },
        )
        .unwrap();
        let g2 = g2.as_symmetric().unwrap();
        assert_eq!(g2.num_edges(), 8);
        assert_eq!(g2.non_edges(), vec![(0, 1), (2, 3)]);
        // G_2 after moving copy t to {t, 3 - t}
        assert_eq!(g2.induced(&[0, 2, 3, 1]), join_family(2));

        let k2: Pattern = SymmetricPattern::complete(2).into();
        assert_eq!(
            mutate(&k2, &Mutation::AddLoopedSuspension).unwrap(),
            SymmetricPattern::complete(3).into()
        );
        assert!(mutate(&cube, &Mutation::AddLoopedSuspension).is_err());
        assert!(mutate(&cube, &Mutation::AddEdge { i: 0, j: 0 }).is_ok());
        assert!(mutate(&cube, &Mutation::AddEdge { i: 0, j: 1 }).is_err());
    }
}
