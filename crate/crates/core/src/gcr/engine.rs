use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tangent::{sym_tangent_projection, tangent_projection, TangentReport};
use crate::error::{Error, Result};
use crate::ffmat::PrimeField;
use crate::pattern::{first_empty_core, max_biclique, BipartitePattern, SymmetricPattern, DEFAULT_BICLIQUE_BUDGET};

/// How per-seed verdicts combine into one decision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VotePolicy {
    /// Strict majority; a tie is an error.
    #[default]
    Majority,
    /// Any disagreement is an error.
    Unanimous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcrOptions {
    pub field: PrimeField,
    pub seeds: Vec<u64>,
    pub policy: VotePolicy,
    pub biclique_budget: u64,
}

impl Default for GcrOptions {
    fn default() -> Self {
        Self::with_master_seed(0, 3)
    }
}

impl GcrOptions {
    /// `votes` consecutive seeds starting at `seed`.
    pub fn with_master_seed(seed: u64, votes: usize) -> Self {
        Self {
            field: PrimeField::default(),
            seeds: (0..votes as u64).map(|k| seed.wrapping_add(k)).collect(),
            policy: VotePolicy::Majority,
            biclique_budget: DEFAULT_BICLIQUE_BUDGET,
        }
    }
}

/// Voted decision for one rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCheck {
    pub r: usize,
    pub dim_image: usize,
    pub surjective: bool,
    pub injective: bool,
    pub seeds: Vec<u64>,
    pub unanimous: bool,
    pub per_seed: Vec<TangentReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub dimension_bound: usize,
    /// `None` when the exact search ran over its node budget.
    pub biclique_bound: Option<usize>,
    /// Smallest `k` with an empty `k`-core, minus one (rectangular patterns only).
    pub core_mtr_bound: Option<usize>,
    /// `2 gcr - 1`; not valid for symmetric patterns.
    pub mtr_upper: Option<usize>,
    pub max_completion_rank_upper: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcrReport {
    pub gcr: usize,
    pub bounds: Bounds,
    pub tangent: Vec<RankCheck>,
}

/// Smallest `k` with `k(m+n) - k^2 >= |E|`.
pub fn dimension_bound(g: &BipartitePattern) -> usize {
    let (m, n, e) = (g.m(), g.n(), g.num_edges());
    (0..=m.min(n)).find(|&k| k * (m + n) - k * k >= e).expect("k = min(m, n) always suffices")
}

/// Smallest `k` with `nk - k(k-1)/2 >= |E|`.
pub fn sym_dimension_bound(g: &SymmetricPattern) -> usize {
    let (n, e) = (g.n(), g.num_edges());
    (0..=n).find(|&k| n * k - k * k.saturating_sub(1) / 2 >= e).expect("k = n always suffices")
}

fn vote(r: usize, per_seed: Vec<TangentReport>, policy: VotePolicy) -> Result<RankCheck> {
    let yes = per_seed.iter().filter(|t| t.surjective).count();
    let no = per_seed.len() - yes;
    let decided = match policy {
        VotePolicy::Majority if yes != no => yes > no,
        VotePolicy::Unanimous if yes == 0 || no == 0 => yes > 0,
        _ => return Err(Error::SeedDisagreement { rank: r, yes, no }),
    };
    let rep = per_seed
        .iter()
        .find(|t| t.surjective == decided)
        .expect("the winning side has a member");
    Ok(RankCheck {
        r,
        dim_image: rep.dim_image,
        surjective: decided,
        injective: rep.injective,
        seeds: per_seed.iter().map(|t| t.seed).collect(),
        unanimous: yes == 0 || no == 0,
        per_seed,
    })
}

fn check_seeds(opts: &GcrOptions) -> Result<()> {
    if opts.seeds.is_empty() {
        return Err(Error::InvalidParams {
            family: "gcr".into(),
            reason: "at least one seed is needed".into(),
        });
    }
    Ok(())
}

/// Voted tangent-projection decision at rank `r`.
pub fn check_rank(g: &BipartitePattern, r: usize, opts: &GcrOptions) -> Result<RankCheck> {
    check_seeds(opts)?;
    let per_seed = opts
        .seeds
        .par_iter()
        .map(|&s| tangent_projection(g, r, s, opts.field))
        .collect::<Result<Vec<_>>>()?;
    vote(r, per_seed, opts.policy)
}

pub fn sym_check_rank(g: &SymmetricPattern, r: usize, opts: &GcrOptions) -> Result<RankCheck> {
    check_seeds(opts)?;
    let per_seed = opts
        .seeds
        .par_iter()
        .map(|&s| sym_tangent_projection(g, r, s, opts.field))
        .collect::<Result<Vec<_>>>()?;
    vote(r, per_seed, opts.policy)
}

/// Lower bounds only; cheap enough to call without running the engine.
pub fn lower_bounds(g: &BipartitePattern, budget: u64) -> (usize, Option<usize>) {
    let biclique = match max_biclique(g, false, budget) {
        Ok(b) => Some(b.size),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => unreachable!("biclique search only fails on budget: {e}"),
    };
    (dimension_bound(g), biclique)
}

/// Generic completion rank: the first `r` with a surjective projection,
/// scanning upward from the best combinatorial lower bound.
pub fn gcr(g: &BipartitePattern, opts: &GcrOptions) -> Result<GcrReport> {
    let (dim, biclique) = lower_bounds(g, opts.biclique_budget);
    let start = dim.max(biclique.unwrap_or(0));
    let mut tangent = Vec::new();
    for r in start..=g.m().min(g.n()) {
        let check = check_rank(g, r, opts)?;
        let done = check.surjective;
        tangent.push(check);
        if done {
            let gcr = r;
            return Ok(GcrReport {
                gcr,
                bounds: Bounds {
                    dimension_bound: dim,
                    biclique_bound: biclique,
                    core_mtr_bound: Some(first_empty_core(g) - 1),
                    mtr_upper: Some((2 * gcr).saturating_sub(1)),
                    max_completion_rank_upper: 2 * gcr,
                },
                tangent,
            });
        }
    }
    unreachable!("the projection is onto at r = min(m, n)")
}

/// Symmetric generic completion rank. The lower bound uses the largest fully
/// known `r x r` block, read off the bipartite double cover.
pub fn sgcr(g: &SymmetricPattern, opts: &GcrOptions) -> Result<GcrReport> {
    let dim = sym_dimension_bound(g);
    let biclique = match max_biclique(&g.double_cover(), false, opts.biclique_budget) {
        Ok(b) => Some(b.size),
        Err(_) => None,
    };
    let start = dim.max(biclique.unwrap_or(0));
    let mut tangent = Vec::new();
    for r in start..=g.n() {
        let check = sym_check_rank(g, r, opts)?;
        let done = check.surjective;
        tangent.push(check);
        if done {
            return Ok(GcrReport {
                gcr: r,
                bounds: Bounds {
                    dimension_bound: dim,
                    biclique_bound: biclique,
                    core_mtr_bound: None,
                    mtr_upper: None,
                    max_completion_rank_upper: 2 * r,
                },
                tangent,
            });
        }
    }
    unreachable!("the projection is onto at r = n")
}
