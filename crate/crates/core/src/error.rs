use thiserror::Error;

use crate::root_systems::Family;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank out of range: type {family} requires n >= {min}, got n = {rank}")]
    RankOutOfRange { family: Family, rank: usize, min: usize },

    #[error("weight length mismatch: expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid highest weight: need k >= l >= 0, got k = {k}, l = {l}")]
    InvalidHighestWeight { k: i64, l: i64 },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("shape has {boxes} boxes but content sums to {content}")]
    ShapeContentMismatch { boxes: i64, content: i64 },

    #[error("operation not available for type {family}: {reason}")]
    UnsupportedFamily { family: Family, reason: &'static str },

    #[error("invalid partition shape: {0}")]
    InvalidShape(String),
}
