use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("weight is not dominant integral: {0}")]
    NotDominant(String),
    #[error("module dimension {dim} exceeds the cap {cap}")]
    CapExceeded { dim: u64, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("lattice error: {0}")]
    Lattice(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;
