//! Crate-wide error type.

use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Error, Debug)]
pub enum Error {
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid cost matrix: {0}")]
    InvalidCostMatrix(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("config parse error at line {line}: {msg}")]
    ConfigParse { line: usize, msg: String },

    #[error("dataset parse error at line {line}: {msg}")]
    DatasetParse { line: usize, msg: String },

    #[error("invalid scene spec: {0}")]
    InvalidSceneSpec(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("non-finite activation in decoder layer {layer}: {what}")]
    NonFiniteActivation { layer: usize, what: String },

    #[error("non-finite loss at step {step}; offending scenes {scene_ids:?}")]
    NonFiniteLoss { step: usize, scene_ids: Vec<u64> },

    #[error("memory budget exceeded: {0}")]
    MemoryBudget(String),

    #[error("invalid detection: {0}")]
    InvalidDetection(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-parsable class keyword, used by the CLI on exit.
    pub fn class(&self) -> &'static str {
        match self {
            Error::DegenerateGeometry(_) | Error::InvalidPermutation(_) => "geometry",
            Error::InvalidCostMatrix(_) => "assignment",
            Error::ShapeMismatch(_) => "shape",
            Error::InvalidConfig(_) | Error::ConfigParse { .. } => "config",
            Error::DatasetParse { .. } | Error::InvalidSceneSpec(_) => "data",
            Error::Checkpoint(_) => "checkpoint",
            Error::NonFiniteActivation { .. } | Error::NonFiniteLoss { .. } => "numeric",
            Error::MemoryBudget(_) => "memory",
            Error::InvalidDetection(_) => "eval",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
