use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown pattern family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameters for `{family}`: {reason}")]
    InvalidParams { family: String, reason: String },

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid vertex or edge: {0}")]
    InvalidVertex(String),

    #[error("biclique search exceeded its node budget of {budget}")]
    BudgetExceeded { budget: u64 },

    #[error("glue is not a complete bipartite subgraph: {0}")]
    InvalidGlue(String),

    #[error("matrix contains a non-finite entry")]
    NonFiniteEntry,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("linear system is inconsistent")]
    InconsistentSystem,

    #[error("{0} is not a usable prime modulus")]
    NotPrime(u64),

    #[error("random draw stayed degenerate after {attempts} attempts")]
    DegenerateDraw { attempts: usize },

    #[error("randomized decision at rank {rank} disagrees across seeds ({yes} surjective, {no} not)")]
    SeedDisagreement { rank: usize, yes: usize, no: usize },

    #[error("edge count {actual} does not equal r(m+n-r) = {expected}")]
    EdgeCount { expected: usize, actual: usize },

    #[error("certificate precondition failed: {0}")]
    Certificate(String),

    #[error("column fit precondition failed: {0}")]
    FitPrecondition(String),

    #[error("pattern is not chordal bipartite")]
    NotChordal,

    #[error("a specified minor vanishes while re-inserting {vertex}: {k} specified entries against rank {rank}")]
    VanishingMinor { vertex: String, k: usize, rank: usize },

    #[error("wrong pattern: {0}")]
    WrongPattern(String),

    #[error("boundary case refused: {0}")]
    BoundaryCase(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
