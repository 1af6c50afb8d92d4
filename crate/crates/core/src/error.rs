use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("edge type mismatch: {0}")]
    EdgeTypeMismatch(String),

    #[error("cannot decompose the leaf tree `|`")]
    LeafDecomposition,

    #[error("invalid vertex handle {handle} (tree has {vertices} vertices)")]
    InvalidVertex { handle: usize, vertices: usize },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("search budget exceeded: {size} grid points > cap {cap}")]
    BudgetExceeded { size: u128, cap: u128 },

    #[error("enumeration cap exceeded: n = {n} > cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("nonzero weight {weight} for index `{index}` where weight zero is required")]
    NonzeroWeight { index: String, weight: String },

    #[error("structure lacks operation `{0}` required by the axiom set")]
    MissingOperation(String),

    #[error("empty index set")]
    EmptyIndexSet,

    #[error("unknown name: {0}")]
    Unknown(String),

    #[error("step `{step}` cannot follow a {stage} stage")]
    InvalidStep { step: String, stage: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
