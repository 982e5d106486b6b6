use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no center density entry for dimension k = {0}")]
    MissingDensity(usize),

    #[error("distance {0} outside the domain of the packing bound")]
    BoundDomain(f64),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("simplex iteration limit ({0}) reached")]
    IterationLimit(usize),

    #[error("candidate norm W = {w:.4} is too small for k = {k}")]
    ShellTooSmall { w: f64, k: usize },

    #[error("search produced no valid candidate")]
    NoCandidates,

    #[error("search space too large: {count} reduced cases (estimate {estimate:.3e}), limit {limit}")]
    SearchSpaceTooLarge { count: f64, estimate: f64, limit: f64 },

    #[error("catalog record rejected: {0}")]
    Verification(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("catalog line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn csv(path: impl Into<PathBuf>, source: csv::Error) -> Self {
        Error::Csv { path: path.into(), source }
    }
}
