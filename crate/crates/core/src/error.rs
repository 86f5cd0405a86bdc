use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource cap exceeded: {rows}x{cols} matrix reached {entries} stored entries (cap {cap})")]
    ResourceCap {
        rows: usize,
        cols: usize,
        entries: usize,
        cap: usize,
    },

    #[error("negative Hilbert coefficient at degree {degree}; the sequence is not a complete intersection")]
    NegativeCoefficient { degree: usize },

    #[error("classes have mixed degrees")]
    MixedDegrees,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
