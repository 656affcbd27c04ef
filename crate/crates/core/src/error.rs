use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("duplicate edge name `{0}`")]
    DuplicateEdge(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("edge `{0}` is not an inner edge")]
    NotInnerEdge(String),

    #[error("invalid face: {0}")]
    InvalidFace(String),

    #[error("subobjects have different ambient trees: `{0}` vs `{1}`")]
    AmbientMismatch(String, String),

    #[error("face is not expressed over the expected domain: {0}")]
    DomainMismatch(String),

    #[error("filtration stage {stage} out of range 1..={max}")]
    StageOutOfRange { stage: usize, max: usize },

    #[error("expansion step rejected: {0}")]
    InvalidStep(String),

    #[error("certification precondition failed: {0}")]
    Certify(String),

    #[error("invalid arrow: {0}")]
    InvalidArrow(String),

    #[error("operad does not support arity {arity} (maximum {max})")]
    ArityUnsupported { arity: usize, max: usize },

    #[error("evaluation failed: {0}")]
    Evaluation(String),

    #[error("invalid input file: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
