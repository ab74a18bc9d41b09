//! Optimizer-based evidence for typical ranks of an arbitrary pattern.

use rand::RngCore;
use rayon::prelude::*;

use super::report::{trial_rng, CertificateKind, TrialRecord, TypicalSampleReport};
use crate::complete::{gaussian_partial, lowrank_fit, FitOptions};
use crate::error::{Error, Result};
use crate::pattern::BipartitePattern;

/// Gaussian trials fitted at ranks `r` and `r - 1`. A trial lands in class `r`
/// when it fits at `r` but not at `r - 1`, in class `r - 1` when it already fits
/// at `r - 1`, and is unclassified when it fails at `r`. Everything here is
/// optimizer evidence.
pub fn typical_scan(g: &BipartitePattern, r: usize, trials: usize, seed: u64, opts: &FitOptions) -> Result<TypicalSampleReport> {
    if r == 0 || r > g.m().min(g.n()) {
        return Err(Error::InvalidParams {
            family: "scan".into(),
            reason: format!("rank {r} outside 1..={}", g.m().min(g.n())),
        });
    }
    let opts = FitOptions {
        stop_on_success: true,
        ..opts.clone()
    };
    let records = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let x = gaussian_partial(g.clone(), &mut rng);
            let fit_opts = FitOptions {
                seed: rng.next_u64(),
                ..opts.clone()
            };
            let at_r = lowrank_fit(&x, r, &fit_opts)?;
            let record = |class: Option<usize>, value| TrialRecord {
                trial: t,
                class,
                certificate: class.map(|_| CertificateKind::OptimizerEvidence),
                value: Some(value),
            };
            if !at_r.completable {
                return Ok(record(None, at_r.residual));
            }
            let below = lowrank_fit(&x, r - 1, &fit_opts)?;
            Ok(if below.completable {
                record(Some(r - 1), below.residual)
            } else {
                record(Some(r), below.residual)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let id = format!("{}x{} pattern, {} edges", g.m(), g.n(), g.num_edges());
    Ok(TypicalSampleReport::from_records(id, seed, Some(opts), records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{cube, tree_star};
    use crate::typical::cube_discriminants;

    #[test]
    fn tree_always_rank_one() {
        let r = typical_scan(&tree_star(1, 5), 1, 30, 0, &FitOptions::default()).unwrap();
        assert_eq!(r.count(1), 30);
    }

    #[test]
    fn cube_rank_three_matches_discriminant() {
        let opts = FitOptions::default();
        let r = typical_scan(&cube(), 3, 150, 2, &opts).unwrap();
        assert!(r.count(3) > 0);
        for rec in &r.records {
            let x = gaussian_partial(cube(), &mut trial_rng(2, rec.trial));
            if cube_discriminants(&x).unwrap().iter().any(|&d| d < 0.0) {
                assert_eq!(rec.class, Some(3));
            }
        }
        let four = typical_scan(&cube(), 4, 40, 2, &opts).unwrap();
        assert_eq!(four.count(4), 0);
        assert!(typical_scan(&cube(), 5, 1, 0, &opts).is_err());
    }
}
