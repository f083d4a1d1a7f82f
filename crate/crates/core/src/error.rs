use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partitions have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("partition {0} is not {1}-regular")]
    NotRegular(String, u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("branch not covered by the branching rule excerpt: {0}")]
    BranchNotCovered(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),
    #[error("matrix is not nilpotent of the required order: {0}")]
    NotNilpotent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_prime(p: u64) -> Result<()> {
    if crate::modp::is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}
