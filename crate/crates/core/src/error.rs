use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("{path}: file size {len} is not a multiple of 8 bytes (truncated edge record)")]
    TruncatedRecord { path: PathBuf, len: u64 },

    #[error("{path}: file size {len} is not a multiple of 4 bytes")]
    TruncatedIdFile { path: PathBuf, len: u64 },

    #[error("vertex id {vertex} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: u32, vertex_count: usize },

    #[error("partition id {partition} out of range for k = {k}")]
    PartitionOutOfRange { partition: u32, k: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("no candidate partition left for edge ({first}, {second})")]
    CapacityExhausted { first: u32, second: u32 },

    #[error("assignment stream is inconsistent: {0}")]
    Assignment(String),

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
