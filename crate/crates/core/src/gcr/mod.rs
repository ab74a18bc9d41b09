//! Generic completion rank by tangent-space projection, with bounds and certificates.

mod certificate;
mod engine;
mod tangent;

pub use certificate::{
    build_circulant_certificate, clique_sum_combine, verify_partition_certificate, vertex_deletion_check,
    BlockViolation, CertificateCheck, CirculantCertificate, DeletionOutcome,
};
pub use engine::{
    check_rank, dimension_bound, gcr, lower_bounds, sgcr, sym_check_rank, sym_dimension_bound, Bounds, GcrOptions,
    GcrReport, RankCheck, VotePolicy,
};
pub use tangent::{sym_coordinate, sym_tangent_projection, tangent_projection, TangentReport};
