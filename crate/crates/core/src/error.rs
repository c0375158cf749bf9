use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRank { index: usize, rank: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("indices must be distinct (got {0} twice)")]
    EqualIndices(usize),

    #[error("word `{0}` is not an involution")]
    NotAnInvolution(String),

    #[error("induced index map is not a bijection")]
    PermutationNotBijective,

    #[error("claimed inverse does not invert the map: {0}")]
    NotInverse(String),

    #[error("no k <= {0} with c^k = 1")]
    OrderExceedsBound(usize),

    #[error("closure exceeded cap of {0} elements")]
    CapExceeded(usize),

    #[error("element does not normalize the subgroup")]
    NotNormalizing,

    #[error("word of odd length is not in the index-2 kernel")]
    OddLength,

    #[error("edge origin {0} carries no label")]
    OriginNotLabeled(usize),

    #[error("edge origin {0} is a leaf")]
    OriginIsLeaf(usize),

    #[error("illegal collapse: {0}")]
    IllegalCollapse(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("assertion failed [{clause}]: {details}")]
    AssertionFailed { clause: String, details: String },
}

impl Error {
    pub(crate) fn assertion(clause: impl Into<String>, details: impl Into<String>) -> Self {
        Error::AssertionFailed {
            clause: clause.into(),
            details: details.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
