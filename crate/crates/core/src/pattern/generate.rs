//! Generators for the named pattern families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bipartite::BipartitePattern;
use super::symmetric::SymmetricPattern;
use super::Pattern;
use crate::error::{Error, Result};

/// Every family name accepted by [`generate`], with its parameter list.
pub const FAMILIES: &[(&str, &str)] = &[
    ("complete", "m n"),
    ("tree-path", "m n  (|m-n| <= 1)"),
    ("tree-star", "m n"),
    ("tree-random", "m n  (uses the seed)"),
    ("cycle", "k  (the cycle C_2k, k >= 2)"),
    ("triangular", "n"),
    ("circulant", "n l  (1 <= l <= n)"),
    ("crown", "n  (n >= 2)"),
    ("cube", ""),
    ("sym-complete", "n"),
    ("sym-knk1", "n"),
    ("sym-join-family", "n"),
    ("sym-antidiagonal", "n"),
];

/// Builds a member of a named family. Only `tree-random` consults the seed.
pub fn generate(family: &str, params: &[usize], seed: Option<u64>) -> Result<Pattern> {
    let bad = |reason: &str| Error::InvalidParams {
        family: family.to_string(),
        reason: reason.to_string(),
    };
    let want = |k: usize| -> Result<()> {
        if params.len() == k {
            Ok(())
        } else {
            Err(bad(&format!("expected {k} parameter(s), got {}", params.len())))
        }
    };
    let positive = || -> Result<()> {
        if params.iter().all(|&p| p > 0) {
            Ok(())
        } else {
            Err(bad("parameters must be positive"))
        }
    };
    let p = match family {
        "complete" => {
            want(2)?;
            positive()?;
            Pattern::Bipartite(BipartitePattern::complete(params[0], params[1]))
        }
        "tree-path" => {
            want(2)?;
            positive()?;
            Pattern::Bipartite(tree_path(params[0], params[1]).ok_or_else(|| bad("need |m - n| <= 1"))?)
        }
        "tree-star" => {
            want(2)?;
            positive()?;
            Pattern::Bipartite(tree_star(params[0], params[1]))
        }
        "tree-random" => {
            want(2)?;
            positive()?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
            Pattern::Bipartite(random_tree(params[0], params[1], &mut rng))
        }
        "cycle" => {
            want(1)?;
            if params[0] < 2 {
                return Err(bad("need k >= 2"));
            }
            Pattern::Bipartite(cycle(params[0]))
        }
        "triangular" => {
            want(1)?;
            positive()?;
            Pattern::Bipartite(triangular(params[0]))
        }
        "circulant" => {
            want(2)?;
            let (n, l) = (params[0], params[1]);
            if l == 0 || l > n {
                return Err(bad("need 1 <= l <= n"));
            }
            Pattern::Bipartite(circulant(n, l))
        }
        "crown" => {
            want(1)?;
            if params[0] < 2 {
                return Err(bad("need n >= 2"));
            }
            Pattern::Bipartite(circulant(params[0], params[0] - 1))
        }
        "cube" => {
            want(0)?;
            Pattern::Bipartite(circulant(4, 3))
        }
        "sym-complete" => {
            want(1)?;
            positive()?;
            Pattern::Symmetric(SymmetricPattern::complete(params[0]))
        }
        "sym-knk1" => {
            want(1)?;
            positive()?;
            Pattern::Symmetric(knk1(params[0]))
        }
        "sym-join-family" => {
            want(1)?;
            positive()?;
            Pattern::Symmetric(join_family(params[0]))
        }
        "sym-antidiagonal" => {
            want(1)?;
            positive()?;
            Pattern::Symmetric(antidiagonal(params[0]))
        }
        _ => return Err(Error::UnknownFamily(family.to_string())),
    };
    Ok(p)
}

/// Path alternating between rows and columns; needs `|m - n| <= 1`.
pub fn tree_path(m: usize, n: usize) -> Option<BipartitePattern> {
    if m.abs_diff(n) > 1 {
        return None;
    }
    // row i touches columns i-1 and i when rows lead, i and i+1 when columns lead
    let cols_lead = n > m;
    Some(BipartitePattern::from_fn(m, n, |i, j| {
        if cols_lead {
            j == i || j == i + 1
        } else {
            j == i || j + 1 == i
        }
    }))
}

/// Row 0 sees every column and column 0 sees every row.
pub fn tree_star(m: usize, n: usize) -> BipartitePattern {
    BipartitePattern::from_fn(m, n, |i, j| i == 0 || j == 0)
}

/// Uniform spanning tree of `K_{m,n}` by the Aldous-Broder random walk.
pub fn random_tree<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> BipartitePattern {
    let total = m + n;
    let mut seen = vec![false; total];
    let mut edges = Vec::with_capacity(total.saturating_sub(1));
    // vertices 0..m are rows, m..m+n columns
    let mut cur = rng.random_range(0..total);
    seen[cur] = true;
    let mut remaining = total - 1;
    while remaining > 0 {
        let next = if cur < m {
            m + rng.random_range(0..n)
        } else {
            rng.random_range(0..m)
        };
        if !seen[next] {
            seen[next] = true;
            remaining -= 1;
            edges.push(if cur < m { (cur, next - m) } else { (next, cur - m) });
        }
        cur = next;
    }
    BipartitePattern::new(m, n, edges).expect("tree edges are distinct")
}

/// The cycle `C_{2k}` as a `k x k` pattern.
pub fn cycle(k: usize) -> BipartitePattern {
    BipartitePattern::from_fn(k, k, |i, j| j == i || j == (i + 1) % k)
}

/// `T_n`: entries on and below the diagonal.
pub fn triangular(n: usize) -> BipartitePattern {
    BipartitePattern::from_fn(n, n, |i, j| i >= j)
}

/// `G(n, l)`: row `i` misses columns `i, i+1, ..., i+n-l-1` (mod n).
///
/// ```
/// let cube = mcrank::pattern::circulant(4, 3);
/// assert_eq!(cube.non_edges(), vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
/// let g = mcrank::pattern::circulant(5, 3);
/// assert!(!g.has_edge(4, 0) && !g.has_edge(4, 4) && g.has_edge(4, 1));
/// ```
pub fn circulant(n: usize, l: usize) -> BipartitePattern {
    BipartitePattern::from_fn(n, n, |i, j| (j + n - i) % n >= n - l)
}

pub fn crown(n: usize) -> BipartitePattern {
    circulant(n, n - 1)
}

pub fn cube() -> BipartitePattern {
    circulant(4, 3)
}

/// `K_n° ∪ K_1°`: a complete looped block plus one isolated looped vertex.
pub fn knk1(n: usize) -> SymmetricPattern {
    SymmetricPattern::complete(n).disjoint_union(&SymmetricPattern::complete(1))
}

/// `G_n`, the join of `n` copies of `K_1° ∪ K_1°`, relabelled so that copy `t`
/// occupies vertices `t` and `2n-1-t` and the unknown entries form the anti-diagonal.
pub fn join_family(n: usize) -> SymmetricPattern {
    let pair = SymmetricPattern::complete(1).disjoint_union(&SymmetricPattern::complete(1));
    let mut g = pair.clone();
    for _ in 1..n {
        g = g.join(&pair);
    }
    // copy t sits at 2t, 2t+1 after the joins
    let mut order = vec![0; 2 * n];
    for t in 0..n {
        order[t] = 2 * t;
        order[2 * n - 1 - t] = 2 * t + 1;
    }
    g.induced(&order)
}

/// `2n x 2n` symmetric pattern with everything known except the anti-diagonal.
pub fn antidiagonal(n: usize) -> SymmetricPattern {
    SymmetricPattern::from_fn(2 * n, |i, j| i + j != 2 * n - 1)
}
