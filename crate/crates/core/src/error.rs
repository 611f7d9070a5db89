use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular series: {0}")]
    SingularSeries(String),
    #[error("near-pole evaluation: {0}")]
    NearPole(String),
    #[error("branch error: {0}")]
    Branch(String),
    #[error("no zero exists for (A,B)=({0},{1})")]
    NoZero(i64, i64),
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("precision failure: {0}")]
    Precision(String),
    #[error("self-check failure: {0}")]
    SelfCheck(String),
    #[error("vanishing factor in sine product: {0}")]
    ZeroProduct(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("identity check failed: {0}")]
    IdentityFailure(String),
    #[error("overflow: {0}")]
    Overflow(String),
}

impl Error {
    /// True for failures that a rerun at higher precision might cure.
    pub fn is_precision(&self) -> bool {
        matches!(
            self,
            Error::Precision(_) | Error::SelfCheck(_) | Error::IdentityFailure(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
