use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("unknown pair identifier {0:?}")]
    UnknownPair(String),

    /// A branching hypothesis failed; `rule` is the pair identifier.
    #[error("stable range violation for {rule}: {inequality}")]
    StableRangeViolation { rule: String, inequality: String },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("out of the oracle-safe regime: {0}")]
    OutOfSafeRegime(String),

    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("integer overflow while accumulating {0}")]
    Overflow(&'static str),

    #[error("cache file: {0}")]
    Cache(String),
}

impl Error {
    pub(crate) fn stable(rule: &str, inequality: String) -> Self {
        Error::StableRangeViolation {
            rule: rule.to_string(),
            inequality,
        }
    }
}
