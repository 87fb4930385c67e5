use thiserror::Error;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("need at least {needed} points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("halfspace system does not describe a bounded set")]
    Unbounded,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid homomorphism spec: {0}")]
    InvalidSpec(String),

    #[error("malformed subject: {0}")]
    MalformedSubject(String),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("source points are affinely dependent (rank {rank}, need {needed})")]
    RankDeficient { rank: usize, needed: usize },

    #[error("pair {index} is not reproduced by the affine fit")]
    NonAffineData { index: usize },

    #[error("affine map is not injective")]
    NotInjective,

    #[error("affine map is not a bijection")]
    NotBijective,

    #[error("samples are not produced by a canonical homomorphism: {0}")]
    NotCanonical(String),

    #[error("inconsistent samples: {0}")]
    Inconsistent(String),

    #[error("dimension-raising homomorphisms with c = 2 are not characterized")]
    UnsupportedOpenCase,

    #[error("pole undefined: the hyperplane passes through the center")]
    UndefinedPole,

    #[error("empty segment family has only the degenerate transversal a = 0")]
    DegenerateFamily,

    #[error("family of {size} members exceeds the exhaustive limit of {limit}")]
    FamilyTooLarge { size: usize, limit: usize },

    #[error("no affine subspace found: {step}")]
    NotFound { step: String },

    #[error("function is not in the lattice: {0}")]
    NotInClass(String),

    #[error("kappa mismatch")]
    KappaMismatch,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
