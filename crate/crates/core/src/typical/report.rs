use std::collections::BTreeMap;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complete::FitOptions;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    /// Decided by an exact algebraic criterion.
    ExactCertificate,
    /// Decided by the optimizer; not a proof.
    OptimizerEvidence,
}

/// One trial's outcome. `class` is `None` when nothing could be concluded.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub class: Option<usize>,
    pub certificate: Option<CertificateKind>,
    /// The deciding quantity: a discriminant, an eigenvalue product or a fit residual.
    pub value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassFrequency {
    pub rank: usize,
    pub certificate: CertificateKind,
    pub count: usize,
    pub frequency: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypicalSampleReport {
    pub pattern: String,
    pub trials: usize,
    pub seed: u64,
    pub classes: Vec<ClassFrequency>,
    pub unclassified: usize,
    pub optimizer: Option<FitOptions>,
    /// Per-trial data; exported as CSV rather than JSON.
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

impl TypicalSampleReport {
    pub fn from_records(pattern: impl Into<String>, seed: u64, optimizer: Option<FitOptions>, records: Vec<TrialRecord>) -> Self {
        let trials = records.len();
        let mut counts: BTreeMap<(usize, CertificateKind), usize> = BTreeMap::new();
        let mut unclassified = 0;
        for r in &records {
            match (r.class, r.certificate) {
                (Some(c), Some(k)) => *counts.entry((c, k)).or_default() += 1,
                _ => unclassified += 1,
            }
        }
        let classes = counts
            .into_iter()
            .map(|((rank, certificate), count)| ClassFrequency {
                rank,
                certificate,
                count,
                frequency: count as f64 / trials as f64,
            })
            .collect();
        Self {
            pattern: pattern.into(),
            trials,
            seed,
            classes,
            unclassified,
            optimizer,
            records,
        }
    }

    /// Total frequency of a rank over all certificate kinds.
    pub fn frequency(&self, rank: usize) -> f64 {
        self.classes.iter().filter(|c| c.rank == rank).map(|c| c.frequency).sum()
    }

    pub fn count(&self, rank: usize) -> usize {
        self.classes.iter().filter(|c| c.rank == rank).map(|c| c.count).sum()
    }

    pub fn observed_ranks(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.classes.iter().map(|c| c.rank).collect();
        r.dedup();
        r
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.records {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// The random stream of one trial; independent of scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequencies_and_csv() {
        let rec = |trial, class, certificate| TrialRecord {
            trial,
            class,
            certificate,
            value: Some(0.5),
        };
        let r = TypicalSampleReport::from_records(
            "x",
            7,
            None,
            vec![
                rec(0, Some(2), Some(CertificateKind::OptimizerEvidence)),
                rec(1, Some(3), Some(CertificateKind::ExactCertificate)),
                rec(2, None, None),
                rec(3, Some(3), Some(CertificateKind::ExactCertificate)),
            ],
        );
        assert_eq!(r.unclassified, 1);
        assert_eq!(r.count(3), 2);
        assert!((r.frequency(2) - 0.25).abs() < 1e-15);
        assert!(r.classes.iter().map(|c| c.frequency).sum::<f64>() <= 1.0);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("trial,class,certificate,value\n0,2,optimizer-evidence,0.5\n"));
        assert!(text.contains("\n2,,,0.5\n"));
        let json = serde_json::to_value(&r).unwrap();
        assert!(json.get("records").is_none());
        assert_eq!(json["classes"][1]["certificate"], "exact-certificate");
    }

    #[test]
    fn empty_report() {
        let r = TypicalSampleReport::from_records("x", 0, None, vec![]);
        assert_eq!((r.trials, r.unclassified), (0, 0));
        assert!(r.classes.is_empty());
    }
}
