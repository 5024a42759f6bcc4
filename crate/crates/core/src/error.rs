use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid node pair ({i}, {j}) for a graph on {n} nodes")]
    InvalidPair { i: usize, j: usize, n: usize },

    #[error("graph is disconnected: {0} is undefined")]
    Disconnected(&'static str),

    #[error("dimension mismatch: expected {expected} nodes, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid distance matrix: {0}")]
    InvalidDistanceMatrix(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge count {d} out of range (at most {max} pairs)")]
    DensityOutOfRange { d: usize, max: usize },

    #[error("exhaustive enumeration is capped at n = {cap}, got n = {n}")]
    NodeCapExceeded { n: usize, cap: usize },

    #[error("no feasible network exists in the sample space")]
    Infeasible,

    #[error("search limit reached before any feasible network was found")]
    LimitReached,

    #[error("{h} chords requested but only {available} chord slots exist")]
    ChordSlots { h: usize, available: usize },

    #[error("assignment is missing variable `{0}`")]
    MissingVariable(String),

    #[error("second-stage model requires a stage-one optimum")]
    MissingStageOne,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn file(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::File {
            path: path.into(),
            source,
        }
    }
}
