//! Bisimplicial edges, chordal-bipartite recognition and elimination orders.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::bipartite::{BipartitePattern, Vertex};
use super::bits::BitSet;
use crate::error::{Error, Result};

/// One deletion in an elimination order. Indices refer to the original pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationStep {
    pub vertex: Vertex,
    /// Neighbors of `vertex` at deletion time, sorted.
    pub neighborhood: Vec<Vertex>,
    /// Bisimplicial edge `(row, col)` containing `vertex`; `None` once it is isolated.
    pub edge: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationTrace {
    pub steps: Vec<EliminationStep>,
}

impl EliminationTrace {
    /// Replays the deletions on `g`, checking every recorded neighborhood and edge.
    pub fn verify(&self, g: &BipartitePattern) -> bool {
        let mut live = Live::new(g);
        for step in &self.steps {
            if !live.alive(step.vertex) || live.neighbors(step.vertex) != step.neighborhood {
                return false;
            }
            match step.edge {
                Some((i, j)) => {
                    let touches = step.vertex == Vertex::Row(i) || step.vertex == Vertex::Col(j);
                    if !touches || !live.has_edge(i, j) || !live.is_bisimplicial(i, j) {
                        return false;
                    }
                }
                None => {
                    if !step.neighborhood.is_empty() {
                        return false;
                    }
                }
            }
            live.delete(step.vertex);
        }
        live.rows.count() == 0 && live.cols.count() == 0
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Outcome of [`is_chordal_bipartite`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chordality {
    Chordal(EliminationTrace),
    /// A shortest induced cycle of length at least 6, as consecutive vertices.
    InducedCycle(Vec<Vertex>),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

/// Subgraph of a fixed pattern induced by the surviving vertices.
struct Live {
    row_adj: Vec<BitSet>,
    col_adj: Vec<BitSet>,
    rows: BitSet,
    cols: BitSet,
}

impl Live {
    fn new(g: &BipartitePattern) -> Self {
        let row_adj = g.row_bits();
        let col_adj = g.transpose().row_bits();
        Self {
            row_adj,
            col_adj,
            rows: BitSet::full(g.m()),
            cols: BitSet::full(g.n()),
        }
    }

    fn alive(&self, v: Vertex) -> bool {
        match v {
            Vertex::Row(i) => self.rows.contains(i),
            Vertex::Col(j) => self.cols.contains(j),
        }
    }

    fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows.contains(i) && self.cols.contains(j) && self.row_adj[i].contains(j)
    }

    fn row_nbrs(&self, i: usize) -> BitSet {
        self.row_adj[i].intersection(&self.cols)
    }

    fn col_nbrs(&self, j: usize) -> BitSet {
        self.col_adj[j].intersection(&self.rows)
    }

    fn degree(&self, v: Vertex) -> usize {
        match v {
            Vertex::Row(i) => self.row_adj[i].intersection_count(&self.cols),
            Vertex::Col(j) => self.col_adj[j].intersection_count(&self.rows),
        }
    }

    fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        match v {
            Vertex::Row(i) => self.row_nbrs(i).iter().map(Vertex::Col).collect(),
            Vertex::Col(j) => self.col_nbrs(j).iter().map(Vertex::Row).collect(),
        }
    }

    fn delete(&mut self, v: Vertex) {
        match v {
            Vertex::Row(i) => self.rows.remove(i),
            Vertex::Col(j) => self.cols.remove(j),
        }
    }

    /// `N(i) x N(j)` is complete.
    fn is_bisimplicial(&self, i: usize, j: usize) -> bool {
        let ni = self.row_nbrs(i);
        self.col_nbrs(j).iter().all(|r| ni.is_subset(&self.row_adj[r]))
    }

    fn first_bisimplicial(&self) -> Option<(usize, usize)> {
        for i in self.rows.iter() {
            for j in self.row_nbrs(i).iter() {
                if self.is_bisimplicial(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// If the neighbors of `v` have nested neighborhoods, the neighbor with the
    /// smallest one. `Some(None)` for an isolated vertex.
    fn weak_simplicial_partner(&self, v: Vertex) -> Option<Option<Vertex>> {
        let mut nbrs: Vec<(usize, BitSet, Vertex)> = match v {
            Vertex::Row(i) => self.row_nbrs(i).iter().map(|j| (0, self.col_nbrs(j), Vertex::Col(j))).collect(),
            Vertex::Col(j) => self.col_nbrs(j).iter().map(|i| (0, self.row_nbrs(i), Vertex::Row(i))).collect(),
        };
        if nbrs.is_empty() {
            return Some(None);
        }
        for e in nbrs.iter_mut() {
            e.0 = e.1.count();
        }
        nbrs.sort_by_key(|e| e.0);
        nbrs.windows(2)
            .all(|w| w[0].1.is_subset(&w[1].1))
            .then(|| Some(nbrs[0].2))
    }

    fn vertices(&self) -> Vec<Vertex> {
        self.rows.iter().map(Vertex::Row).chain(self.cols.iter().map(Vertex::Col)).collect()
    }
}

/// Some edge `(row, col)` whose endpoint neighborhoods span a complete bipartite subgraph.
pub fn find_bisimplicial_edge(g: &BipartitePattern) -> Option<(usize, usize)> {
    Live::new(g).first_bisimplicial()
}

/// Decides chordality by deleting weakly simplicial vertices (neighbors with
/// nested neighborhoods); such a vertex lies on no induced cycle of length 6 or
/// more, and every chordal bipartite graph has one. Each deletion is recorded
/// with the bisimplicial edge to its neighbor of smallest neighborhood.
pub fn is_chordal_bipartite(g: &BipartitePattern) -> Chordality {
    let mut live = Live::new(g);
    let mut trace = EliminationTrace::default();
    loop {
        let verts = live.vertices();
        if verts.is_empty() {
            return Chordality::Chordal(trace);
        }
        let pick = verts
            .iter()
            .find_map(|&v| live.weak_simplicial_partner(v).map(|partner| (v, partner)));
        let Some((v, partner)) = pick else {
            let cycle = shortest_long_induced_cycle(&live).expect("a stuck graph has a long induced cycle");
            return Chordality::InducedCycle(cycle);
        };
        let edge = partner.map(|w| match (v, w) {
            (Vertex::Row(i), Vertex::Col(j)) | (Vertex::Col(j), Vertex::Row(i)) => (i, j),
            _ => unreachable!("neighbors lie on opposite sides"),
        });
        trace.steps.push(EliminationStep {
            vertex: v,
            neighborhood: live.neighbors(v),
            edge,
        });
        live.delete(v);
    }
}

/// Elimination used for completion: take the first bisimplicial edge, delete
/// its endpoint of smaller degree (rows win ties), and clear isolated vertices
/// once no edge is left.
pub fn bisimplicial_elimination(g: &BipartitePattern) -> Result<EliminationTrace> {
    let mut live = Live::new(g);
    let mut trace = EliminationTrace::default();
    while let Some((i, j)) = live.first_bisimplicial() {
        let v = if live.degree(Vertex::Row(i)) <= live.degree(Vertex::Col(j)) {
            Vertex::Row(i)
        } else {
            Vertex::Col(j)
        };
        trace.steps.push(EliminationStep {
            vertex: v,
            neighborhood: live.neighbors(v),
            edge: Some((i, j)),
        });
        live.delete(v);
    }
    for v in live.vertices() {
        if live.degree(v) > 0 {
            return Err(Error::NotChordal);
        }
        trace.steps.push(EliminationStep {
            vertex: v,
            neighborhood: vec![],
            edge: None,
        });
    }
    Ok(trace)
}

fn shortest_long_induced_cycle(live: &Live) -> Option<Vec<Vertex>> {
    let verts = live.vertices();
    let adj = |a: Vertex, b: Vertex| match (a, b) {
        (Vertex::Row(i), Vertex::Col(j)) | (Vertex::Col(j), Vertex::Row(i)) => live.has_edge(i, j),
        _ => false,
    };
    let mut len = 6;
    while len <= verts.len() {
        for (si, &s) in verts.iter().enumerate() {
            let mut path = vec![s];
            if extend_path(&verts[si + 1..], &adj, &mut path, len) {
                return Some(path);
            }
        }
        len += 2;
    }
    None
}

/// Grows an induced path from `path[0]` using only `pool`, closing it into an
/// induced cycle of exactly `len` vertices.
fn extend_path(pool: &[Vertex], adj: &impl Fn(Vertex, Vertex) -> bool, path: &mut Vec<Vertex>, len: usize) -> bool {
    let last = *path.last().expect("path starts non-empty");
    let closing = path.len() + 1 == len;
    for &x in pool {
        if path.contains(&x) || !adj(last, x) {
            continue;
        }
        let inner = if path.len() > 2 { &path[1..path.len() - 1] } else { &[] };
        if inner.iter().any(|&p| adj(p, x)) || path.len() > 1 && adj(path[0], x) != closing {
            continue;
        }
        if path.len() == 1 && closing {
            continue;
        }
        path.push(x);
        if closing || extend_path(pool, adj, path, len) {
            return true;
        }
        path.pop();
    }
    false
}

/// Random chordal bipartite pattern with at most `max_m x max_n` vertices.
///
/// Starts from a random complete bipartite block and adds vertices one at a
/// time, each joined to opposite vertices with nested neighborhoods. The new
/// vertex is then weakly simplicial, so no long induced cycle can appear.
pub fn random_chordal<R: Rng + ?Sized>(max_m: usize, max_n: usize, rng: &mut R) -> BipartitePattern {
    let m = rng.random_range(1..=max_m);
    let n = rng.random_range(1..=max_n);
    let density: f64 = rng.random_range(0.3..0.95);
    let a = rng.random_range(1..=m);
    let b = rng.random_range(1..=n);
    let mut row_adj: Vec<Vec<usize>> = (0..a).map(|_| (0..b).collect()).collect();
    let mut col_adj: Vec<Vec<usize>> = (0..b).map(|_| (0..a).collect()).collect();
    let mut pending: Vec<bool> = std::iter::repeat_n(true, m - a).chain(std::iter::repeat_n(false, n - b)).collect();
    pending.shuffle(rng);
    for is_row in pending {
        let (mine, theirs) = if is_row {
            (&mut row_adj, &mut col_adj)
        } else {
            (&mut col_adj, &mut row_adj)
        };
        let mut candidates: Vec<usize> = (0..theirs.len()).collect();
        candidates.shuffle(rng);
        let mut picked: Vec<usize> = Vec::new();
        for u in candidates {
            if !rng.random_bool(density) {
                continue;
            }
            let nested = picked.iter().all(|&w| {
                let (x, y) = (&theirs[u], &theirs[w]);
                x.iter().all(|t| y.contains(t)) || y.iter().all(|t| x.contains(t))
            });
            if nested {
                picked.push(u);
            }
        }
        let me = mine.len();
        for &u in &picked {
            theirs[u].push(me);
        }
        mine.push(picked);
    }
    let mut rperm: Vec<usize> = (0..m).collect();
    let mut cperm: Vec<usize> = (0..n).collect();
    rperm.shuffle(rng);
    cperm.shuffle(rng);
    let edges = row_adj
        .iter()
        .enumerate()
        .flat_map(|(i, js)| js.iter().map(move |&j| (i, j)))
        .map(|(i, j)| (rperm[i], cperm[j]));
    BipartitePattern::new(m, n, edges).expect("generated edges are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::generate::{circulant, cube, cycle, triangular};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Oracle: some vertex subset induces a connected 2-regular graph on >= 6 vertices.
    fn has_long_induced_cycle(g: &BipartitePattern) -> bool {
        let (m, n) = (g.m(), g.n());
        let total = m + n;
        assert!(total <= 16);
        let adj = |a: usize, b: usize| match (a < m, b < m) {
            (true, false) => g.has_edge(a, b - m),
            (false, true) => g.has_edge(b, a - m),
            _ => false,
        };
        (0u32..1 << total).filter(|s| s.count_ones() >= 6).any(|s| {
            let vs: Vec<usize> = (0..total).filter(|&v| s >> v & 1 == 1).collect();
            if !vs.iter().all(|&v| vs.iter().filter(|&&u| adj(u, v)).count() == 2) {
                return false;
            }
            let mut seen = vec![vs[0]];
            let mut stack = vec![vs[0]];
            while let Some(v) = stack.pop() {
                for &u in &vs {
                    if adj(u, v) && !seen.contains(&u) {
                        seen.push(u);
                        stack.push(u);
                    }
                }
            }
            seen.len() == vs.len()
        })
    }

    fn is_induced_cycle(g: &BipartitePattern, cyc: &[Vertex]) -> bool {
        let adj = |a: Vertex, b: Vertex| match (a, b) {
            (Vertex::Row(i), Vertex::Col(j)) | (Vertex::Col(j), Vertex::Row(i)) => g.has_edge(i, j),
            _ => false,
        };
        let k = cyc.len();
        (0..k).all(|x| {
            (0..k).all(|y| {
                let d = x.abs_diff(y);
                adj(cyc[x], cyc[y]) == (d == 1 || d == k - 1)
            })
        })
    }

    #[test]
    fn bisimplicial_examples() {
        let k22 = BipartitePattern::complete(2, 2);
        assert!(find_bisimplicial_edge(&k22).is_some());
        assert_eq!(find_bisimplicial_edge(&cycle(3)), None);
        let (i, j) = find_bisimplicial_edge(&triangular(3)).unwrap();
        let t = triangular(3);
        for r in t.col_neighbors(j) {
            for c in t.row_neighbors(i) {
                assert!(t.has_edge(r, c));
            }
        }
    }

    #[test]
    fn chordality_examples() {
        for n in 1..=10 {
            match is_chordal_bipartite(&triangular(n)) {
                Chordality::Chordal(t) => {
                    assert!(t.verify(&triangular(n)));
                    assert_eq!(t.len(), 2 * n);
                }
                other => panic!("T_{n}: {other:?}"),
            }
        }
        match is_chordal_bipartite(&cycle(3)) {
            Chordality::InducedCycle(c) => assert_eq!(c.len(), 6),
            other => panic!("{other:?}"),
        }
        assert!(is_chordal_bipartite(&BipartitePattern::complete(3, 5)).is_chordal());
        assert!(!is_chordal_bipartite(&cube()).is_chordal());
    }

    #[test]
    fn six_cycle_with_pendant_is_not_chordal() {
        // deleting an arbitrary endpoint of a bisimplicial edge could break the
        // cycle here; weak-simplicial deletion must not
        let g = BipartitePattern::from_fn(4, 3, |i, j| (i < 3 && (j == i || j == (i + 1) % 3)) || (i == 3 && j == 0));
        match is_chordal_bipartite(&g) {
            Chordality::InducedCycle(c) => {
                assert_eq!(c.len(), 6);
                assert!(is_induced_cycle(&g, &c));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn eight_cycle_witness() {
        let g = cycle(4);
        match is_chordal_bipartite(&g) {
            Chordality::InducedCycle(c) => {
                assert_eq!(c.len(), 8);
                assert!(is_induced_cycle(&g, &c));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn crown_has_a_six_cycle() {
        match is_chordal_bipartite(&circulant(5, 4)) {
            Chordality::InducedCycle(c) => assert!(c.len() >= 6 && is_induced_cycle(&circulant(5, 4), &c)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn elimination_of_triangular_uses_small_degree_endpoints() {
        let t = triangular(4);
        let trace = bisimplicial_elimination(&t).unwrap();
        assert!(trace.verify(&t));
        assert_eq!(trace.len(), 8);
        assert!(matches!(bisimplicial_elimination(&cycle(3)), Err(Error::NotChordal)));
    }

    #[test]
    fn tampered_trace_fails_replay() {
        let t = triangular(3);
        let Chordality::Chordal(mut trace) = is_chordal_bipartite(&t) else {
            panic!()
        };
        trace.steps[0].neighborhood.push(Vertex::Col(9));
        assert!(!trace.verify(&t));
    }

    #[test]
    fn random_chordal_patterns_are_chordal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let g = random_chordal(6, 6, &mut rng);
            assert!(!has_long_induced_cycle(&g), "{g:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn recognition_matches_brute_force(m in 1usize..=5, n in 1usize..=5, bits in any::<u32>()) {
            let g = BipartitePattern::from_fn(m, n, |i, j| bits >> (i * 5 + j) & 1 == 1);
            let result = is_chordal_bipartite(&g);
            prop_assert_eq!(result.is_chordal(), !has_long_induced_cycle(&g));
            match result {
                Chordality::Chordal(trace) => {
                    prop_assert!(trace.verify(&g));
                    let elim = bisimplicial_elimination(&g).unwrap();
                    prop_assert!(elim.verify(&g));
                }
                Chordality::InducedCycle(c) => {
                    prop_assert!(is_induced_cycle(&g, &c));
                }
            }
        }
    }
}
