use serde::{Deserialize, Serialize};

use super::bipartite::{BipartitePattern, Subpattern};
use super::bits::BitSet;
use crate::error::{Error, Result};

/// Node budget used by [`max_biclique`] callers that have no opinion.
pub const DEFAULT_BICLIQUE_BUDGET: u64 = 2_000_000;

/// The `k`-core: repeatedly strip vertices of degree below `k`.
pub fn k_core(g: &BipartitePattern, k: usize) -> Subpattern {
    let (m, n) = (g.m(), g.n());
    let mut row_alive = vec![true; m];
    let mut col_alive = vec![true; n];
    let mut row_deg: Vec<usize> = (0..m).map(|i| g.row_neighbors(i).len()).collect();
    let mut col_deg: Vec<usize> = (0..n).map(|j| g.col_neighbors(j).len()).collect();
    let mut stack: Vec<(bool, usize)> = Vec::new();
    for i in 0..m {
        if row_deg[i] < k {
            row_alive[i] = false;
            stack.push((true, i));
        }
    }
    for j in 0..n {
        if col_deg[j] < k {
            col_alive[j] = false;
            stack.push((false, j));
        }
    }
    while let Some((is_row, v)) = stack.pop() {
        if is_row {
            for j in g.row_neighbors(v) {
                col_deg[j] -= 1;
                if col_alive[j] && col_deg[j] < k {
                    col_alive[j] = false;
                    stack.push((false, j));
                }
            }
        } else {
            for i in g.col_neighbors(v) {
                row_deg[i] -= 1;
                if row_alive[i] && row_deg[i] < k {
                    row_alive[i] = false;
                    stack.push((true, i));
                }
            }
        }
    }
    let rows: Vec<usize> = (0..m).filter(|&i| row_alive[i]).collect();
    let cols: Vec<usize> = (0..n).filter(|&j| col_alive[j]).collect();
    Subpattern {
        pattern: g.induced(&rows, &cols),
        rows,
        cols,
    }
}

/// Smallest `k` whose `k`-core is empty.
pub fn first_empty_core(g: &BipartitePattern) -> usize {
    (1..).find(|&k| k_core(g, k).is_empty()).expect("the core empties past the max degree")
}

/// A balanced complete bipartite subgraph `rows x cols`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Biclique {
    pub size: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Biclique {
    pub fn is_valid_in(&self, g: &BipartitePattern) -> bool {
        self.rows.len() == self.size
            && self.cols.len() == self.size
            && self.rows.iter().all(|&i| self.cols.iter().all(|&j| g.has_edge(i, j)))
    }
}

/// Largest `r` with `K_{r,r}` inside `g`, by branch and bound over row subsets.
///
/// In a bipartite graph the rows and columns of a complete bipartite subgraph
/// span no further edges, so every such subgraph is induced and `induced` only
/// selects the extra check on the witness. Exceeding `budget` search nodes is
/// an error rather than a guess.
pub fn max_biclique(g: &BipartitePattern, induced: bool, budget: u64) -> Result<Biclique> {
    if g.m() > g.n() {
        let t = max_biclique(&g.transpose(), induced, budget)?;
        return Ok(Biclique {
            size: t.size,
            rows: t.cols,
            cols: t.rows,
        });
    }
    let rows = g.row_bits();
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(rows[i].count()));
    let mut search = Search {
        rows: &rows,
        best: Biclique {
            size: 0,
            rows: vec![],
            cols: vec![],
        },
        nodes: 0,
        budget,
    };
    let mut chosen = Vec::new();
    search.extend(&mut chosen, BitSet::full(g.n()), &order)?;
    let b = search.best;
    debug_assert!(b.is_valid_in(g));
    if induced {
        let sub = g.induced(&b.rows, &b.cols);
        debug_assert_eq!(sub.num_edges(), b.size * b.size);
    }
    Ok(b)
}

struct Search<'a> {
    rows: &'a [BitSet],
    best: Biclique,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn extend(&mut self, chosen: &mut Vec<usize>, common: BitSet, candidates: &[usize]) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let c = common.count();
        if chosen.len().min(c) > self.best.size {
            let size = chosen.len().min(c);
            let mut rows = chosen.clone();
            rows.truncate(size);
            rows.sort_unstable();
            self.best = Biclique {
                size,
                rows,
                cols: common.iter().take(size).collect(),
            };
        }
        // a row can only help if it keeps more than `best` common columns
        let need = self.best.size + 1;
        if c < need {
            return Ok(());
        }
        let useful: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&i| self.rows[i].intersection_count(&common) >= need)
            .collect();
        for (k, &i) in useful.iter().enumerate() {
            if chosen.len() + useful.len() - k < self.best.size + 1 {
                break;
            }
            let next = common.intersection(&self.rows[i]);
            if next.count() < self.best.size + 1 {
                continue;
            }
            chosen.push(i);
            self.extend(chosen, next, &useful[k + 1..])?;
            chosen.pop();
        }
        Ok(())
    }
}

/// Identification of vertices for a clique sum: pairs `(index in G1, index in G2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Glue {
    pub rows: Vec<(usize, usize)>,
    pub cols: Vec<(usize, usize)>,
}

/// Where each vertex of a summand landed in a clique sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSum {
    pub pattern: BipartitePattern,
    pub rows2: Vec<usize>,
    pub cols2: Vec<usize>,
}

/// Glues `g2` onto `g1` along a common complete bipartite subgraph.
///
/// Vertices of `g1` keep their indices; the unglued vertices of `g2` follow in order.
pub fn clique_sum(g1: &BipartitePattern, g2: &BipartitePattern, glue: &Glue) -> Result<CliqueSum> {
    let check_side = |pairs: &[(usize, usize)], n1: usize, n2: usize, what: &str| -> Result<()> {
        let mut s1 = vec![false; n1];
        let mut s2 = vec![false; n2];
        for &(a, b) in pairs {
            if a >= n1 || b >= n2 {
                return Err(Error::InvalidGlue(format!("{what} pair ({a}, {b}) out of range")));
            }
            if std::mem::replace(&mut s1[a], true) || std::mem::replace(&mut s2[b], true) {
                return Err(Error::InvalidGlue(format!("{what} pair ({a}, {b}) repeats a vertex")));
            }
        }
        Ok(())
    };
    check_side(&glue.rows, g1.m(), g2.m(), "row")?;
    check_side(&glue.cols, g1.n(), g2.n(), "column")?;
    for &(a1, a2) in &glue.rows {
        for &(b1, b2) in &glue.cols {
            if !g1.has_edge(a1, b1) || !g2.has_edge(a2, b2) {
                return Err(Error::InvalidGlue(format!(
                    "glued vertices miss an edge at ({a1}, {b1}) / ({a2}, {b2})"
                )));
            }
        }
    }
    let place = |pairs: &[(usize, usize)], n1: usize, n2: usize| -> (Vec<usize>, usize) {
        let mut map = vec![usize::MAX; n2];
        for &(a, b) in pairs {
            map[b] = a;
        }
        let mut next = n1;
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        (map, next)
    };
    let (rows2, m) = place(&glue.rows, g1.m(), g2.m());
    let (cols2, n) = place(&glue.cols, g1.n(), g2.n());
    let mut mask = vec![false; m * n];
    for (i, j) in g1.edges() {
        mask[i * n + j] = true;
    }
    for (i, j) in g2.edges() {
        mask[rows2[i] * n + cols2[j]] = true;
    }
    let pattern = BipartitePattern::from_mask(m, n, mask)?;
    debug_assert_eq!(
        pattern.num_edges(),
        g1.num_edges() + g2.num_edges() - glue.rows.len() * glue.cols.len()
    );
    Ok(CliqueSum { pattern, rows2, cols2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::generate::{circulant, cube, cycle, tree_path, triangular};

    fn brute_biclique(g: &BipartitePattern) -> usize {
        let rows = g.row_bits();
        let mut best = 0;
        for mask in 0u32..(1 << g.m()) {
            let mut common = BitSet::full(g.n());
            for (i, r) in rows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    common = common.intersection(r);
                }
            }
            best = best.max((mask.count_ones() as usize).min(common.count()));
        }
        best
    }

    #[test]
    fn core_examples() {
        assert!(k_core(&cube(), 4).is_empty());
        assert_eq!(k_core(&cube(), 3).pattern, cube());
        assert!(k_core(&tree_path(3, 3).unwrap(), 2).is_empty());
        assert_eq!(first_empty_core(&cube()), 4);
    }

    #[test]
    fn core_of_pendant_graph() {
        // K_{3,3} with a pendant column hanging off row 0
        let g = BipartitePattern::from_fn(3, 4, |i, j| j < 3 || i == 0);
        let c = k_core(&g, 2);
        assert_eq!(c.cols, vec![0, 1, 2]);
        assert_eq!(c.pattern, BipartitePattern::complete(3, 3));
    }

    #[test]
    fn biclique_examples() {
        let b = max_biclique(&cube(), true, DEFAULT_BICLIQUE_BUDGET).unwrap();
        assert_eq!(b.size, 2);
        assert!(b.is_valid_in(&cube()));
        assert_eq!(max_biclique(&BipartitePattern::complete(3, 5), false, 1000).unwrap().size, 3);
        assert_eq!(max_biclique(&triangular(5), false, 1000).unwrap().size, 3);
        assert_eq!(max_biclique(&cycle(3), false, 1000).unwrap().size, 1);
        assert_eq!(max_biclique(&BipartitePattern::empty(2, 2), false, 1000).unwrap().size, 0);
    }

    #[test]
    fn biclique_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let (m, n) = (rng.random_range(1..8), rng.random_range(1..8));
            let density = rng.random_range(0.2..0.9);
            let g = BipartitePattern::from_fn(m, n, |_, _| rng.random_bool(density));
            let b = max_biclique(&g, false, u64::MAX).unwrap();
            assert!(b.is_valid_in(&g));
            assert_eq!(b.size, brute_biclique(&g), "{g:?}");
            assert_eq!(max_biclique(&g, true, u64::MAX).unwrap().size, b.size);
        }
    }

    #[test]
    fn biclique_budget_is_enforced() {
        assert!(matches!(
            max_biclique(&circulant(20, 19), false, 50),
            Err(Error::BudgetExceeded { budget: 50 })
        ));
    }

    #[test]
    fn two_cubes_along_a_four_cycle() {
        let glue = Glue {
            rows: vec![(0, 0), (1, 1)],
            cols: vec![(2, 2), (3, 3)],
        };
        let s = clique_sum(&cube(), &cube(), &glue).unwrap();
        assert_eq!(s.pattern.num_vertices(), 12);
        assert_eq!(s.pattern.num_edges(), 12 + 12 - 4);
    }

    #[test]
    fn two_cubes_along_an_edge() {
        let glue = Glue {
            rows: vec![(0, 0)],
            cols: vec![(1, 1)],
        };
        let s = clique_sum(&cube(), &cube(), &glue).unwrap();
        assert_eq!(s.pattern.num_vertices(), 14);
        assert_eq!(s.pattern.num_edges(), 23);
    }

    #[test]
    fn empty_glue_is_disjoint_union() {
        let s = clique_sum(&cube(), &cycle(3), &Glue::default()).unwrap();
        assert_eq!((s.pattern.m(), s.pattern.n()), (7, 7));
        assert_eq!(s.pattern.num_edges(), 18);
        assert!(!s.pattern.has_edge(0, 5));
    }

    #[test]
    fn glue_must_be_complete() {
        let glue = Glue {
            rows: vec![(0, 0)],
            cols: vec![(0, 1)],
        };
        assert!(matches!(clique_sum(&cube(), &cube(), &glue), Err(Error::InvalidGlue(_))));
    }
}
