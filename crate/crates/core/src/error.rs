use std::path::PathBuf;

use thiserror::Error;

use crate::graph::Variant;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("{path}:{line}: construct `{construct}` maps to no node type")]
    UnmappableConstruct {
        path: String,
        line: usize,
        construct: String,
    },

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("expected a {expected} graph, got {actual}")]
    WrongVariant { expected: Variant, actual: Variant },

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("{path}: line {line}: {message}")]
    Label {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("degenerate target range: every value equals {0}")]
    DegenerateRange(f64),

    #[error("invalid split ratios {0:?}: must be non-negative and sum to 1")]
    InvalidRatios([f64; 3]),

    #[error("project `{project}` has {count} graphs; at least 3 are needed to fill every split")]
    ProjectTooSmall { project: String, count: usize },

    #[error("invalid record: {0}")]
    Record(String),

    #[error("bad configuration: {0}")]
    Config(String),

    #[error("no graph could be built ({rejected} inputs rejected)")]
    NoGraphs { rejected: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
