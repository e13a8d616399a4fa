use std::path::PathBuf;

/// Errors produced by corpus loading, clustering, and reporting.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("duplicate pub_id {pub_id:?} at {path}:{line}")]
    DuplicatePubId { pub_id: String, path: PathBuf, line: usize },

    #[error("edge references unknown pub_id {pub_id:?} at {path}:{line}")]
    UnknownPubId { pub_id: String, path: PathBuf, line: usize },

    #[error("self-loop {pub_id:?} -> {pub_id:?} at {path}:{line}")]
    SelfLoop { pub_id: String, path: PathBuf, line: usize },

    #[error("assignment file {path} has {actual} lines, expected {expected}")]
    AssignmentLineCount { path: PathBuf, expected: usize, actual: usize },

    #[error("empty after zero-discard: no publication has any citation")]
    EmptyAfterZeroDiscard,

    #[error("co-citation pair endpoint {node} has zero citations")]
    ZeroCitationCount { node: u32 },

    #[error("conductance undefined: {0}")]
    ConductanceUndefined(String),

    #[error("empty weight multiset")]
    EmptyWeights,

    #[error("cluster sets have disjoint node universes")]
    DisjointUniverses,

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("missing upstream artifact: {path}")]
    MissingArtifact { path: PathBuf },

    #[error("config violation: {0}")]
    ConfigViolation(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), line, msg: msg.into() }
    }

    /// Process exit code used by the pipeline CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::MissingArtifact { .. } => 2,
            Error::ConfigViolation(_) | Error::InvalidParams(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
