//! Completions: exact ones on chordal bipartite patterns and numerical low-rank fits.

mod backend;
mod chordal;
mod fit;
mod partial;

pub use backend::{Backend, FpBackend, RealBackend, Solution};
pub use chordal::{chordal_complete_fp, chordal_complete_real, chordal_complete_with, fit_column};
pub use fit::{gaussian_partial, lowrank_fit, lowrank_profile, sym_lowrank_fit, FitOptions, FitResult};
pub use partial::{CompletedEntries, CompletionResult, PartialMatrix, SymPartialMatrix};
