use std::path::PathBuf;

use thiserror::Error;

use crate::corpus::LineError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read or write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("input stream: {0}")]
    Stream(#[from] std::io::Error),

    #[error("{} malformed input line(s); first: {}", .0.len(), .0.first().map(ToString::to_string).unwrap_or_default())]
    MalformedInput(Vec<LineError>),

    #[error("subcorpus `{subcorpus}`: emotion `{emotion}` has {available} documents, {required} required")]
    InsufficientDocuments {
        subcorpus: String,
        emotion: String,
        available: usize,
        required: usize,
    },

    #[error("sample start {start} is outside [0, {stride})")]
    StartOutOfRange { start: usize, stride: usize },

    #[error("every document is empty after tokenization")]
    EmptyCorpus,

    #[error("truncated SVD did not converge after {steps} Lanczos steps (largest residual {residual:e}, tolerance {tolerance:e})")]
    NoConvergence {
        steps: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("unknown emotion `{0}`")]
    UnknownEmotion(String),

    #[error("subcorpus `{subcorpus}` has no point for emotion `{emotion}`")]
    MissingEmotion { subcorpus: String, emotion: String },

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status for the command-line front end: 2 when a subcorpus
    /// cannot be filled, 1 for every other failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InsufficientDocuments { .. } => 2,
            _ => 1,
        }
    }
}
