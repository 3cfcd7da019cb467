//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parts must be positive and weakly decreasing, got {0:?}")]
    InvalidPartition(Vec<u32>),

    #[error("not a permutation of {{1..{degree}}}: {reason}")]
    InvalidPermutation { degree: usize, reason: String },

    #[error("unknown graph kind `{0}`")]
    UnknownGraphKind(String),

    #[error("unknown category `{0}`")]
    UnknownCategory(String),

    #[error("unknown trace convention `{0}`")]
    UnknownConvention(String),

    #[error("vertex {0} is not in the generated range of the graph")]
    VertexNotFound(String),

    #[error("level {requested} exceeds the generated cap {cap}")]
    LevelOutOfRange { requested: usize, cap: usize },

    #[error("path enumeration exceeded the cap of {cap} paths")]
    PathCapExceeded { cap: usize },

    #[error("pascalization needs payload-determined levels; `{0}` occurs on more than one level")]
    AmbiguousPayload(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid level measure: {0}")]
    InvalidMeasure(String),

    #[error("inner sizes do not match: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid diagram blocks: {0}")]
    InvalidBlocks(String),

    #[error("diagram is not invertible")]
    NotInvertible,

    #[error("category enumeration supports diagrams on at most {max} points per row, got {got}")]
    CategoryTooLarge { max: usize, got: usize },

    #[error("invalid Thoma parameter: {0}")]
    InvalidThoma(String),

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("loop parameter value required: coefficients are not constant in delta")]
    DeltaValueRequired,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
