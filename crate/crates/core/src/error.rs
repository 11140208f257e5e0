use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("insufficient complex depth: level {level} needs simplices of dimension {required}, complex was built up to {max_level}")]
    InsufficientDepth {
        level: usize,
        required: usize,
        max_level: usize,
    },

    #[error("level {level} is not materialized (max level {max_level})")]
    LevelOutOfRange { level: usize, max_level: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("damping factor {alpha} outside admissible interval (0, {upper})")]
    InadmissibleAlpha { alpha: f64, upper: f64 },

    #[error("no principal eigenvector at level {0}: adjacency matrix is empty")]
    NoPrincipalEigenvector(usize),

    #[error("level has {size} simplices, above the dense spectral limit {limit}; enable the truncated-series fallback")]
    DenseLimitExceeded { size: usize, limit: usize },

    #[error("level has {size} simplices, above the distance-matrix limit {limit}")]
    MatrixTooLarge { size: usize, limit: usize },

    #[error("numerical method did not converge: {0}")]
    NonConvergence(String),

    #[error("empty level {0}")]
    EmptyLevel(usize),

    #[error("walk count overflowed u64 at length {0}")]
    Overflow(usize),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status for command-line use: 2 for bad input, 3 for
    /// numerical failure, 4 for a complex built too shallow, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Io { .. }
            | Error::InvalidArgument(_)
            | Error::InadmissibleAlpha { .. }
            | Error::LevelOutOfRange { .. }
            | Error::EmptyLevel(_) => 2,
            Error::NonConvergence(_) | Error::NoPrincipalEigenvector(_) => 3,
            Error::InsufficientDepth { .. } => 4,
            Error::DenseLimitExceeded { .. }
            | Error::MatrixTooLarge { .. }
            | Error::Overflow(_) => 1,
        }
    }
}
