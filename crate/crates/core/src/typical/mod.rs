//! Real typical ranks: exact certificates where they exist, Monte Carlo evidence elsewhere.

mod cube;
mod report;
mod scan;
mod symmetric;

pub use cube::{classify_cube, cube_discriminant, cube_discriminants, cube_typical_sample};
pub use report::{trial_rng, CertificateKind, ClassFrequency, TrialRecord, TypicalSampleReport};
pub use scan::typical_scan;
pub use symmetric::{
    gn_report, gn_sgcr_formula, gn_witness_check, knk1_boundary, knk1_cross_check, knk1_draw, knk1_partial,
    knk1_typical_sample, knk1_witness_check, triangular_root, CrossCheck, GnReport, WitnessCheck, EIGEN_ZERO_TOL,
};
