// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

/// Errors raised by the filtering, clustering and I/O layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("point cloud is empty")]
    EmptyCloud,
    #[error("point has no neighbors to measure against (cloud has {0} point(s))")]
    EmptyNeighborhood(usize),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("frame has no ground-truth labels")]
    MissingLabels,
    #[error("too few points for clustering: {points} < min_cluster_size {min_cluster_size}")]
    TooFewPoints { points: usize, min_cluster_size: usize },
    #[error("non-finite value at point {index}")]
    NonFinite { index: usize },
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("invalid synthetic scene: {0}")]
    InvalidSpec(String),
    #[error("dataset contains no frames")]
    EmptyDataset,
    #[error("malformed file {path}: {reason}")]
    Malformed { path: PathBuf, reason: String },
    #[error("frame {frame}: {source}")]
    Frame {
        frame: String,
        #[source]
        source: Box<Error>,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attach a frame identifier to an error.
    pub fn in_frame(self, frame: impl Into<String>) -> Self {
        Error::Frame {
            frame: frame.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
