//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid resolution: {0}")]
    GridResolution(String),

    #[error("spec: {0}")]
    Spec(String),

    #[error("stability bound violated: {0}")]
    Stability(String),

    #[error("density format: {0}")]
    DensityFormat(String),

    #[error("input: {0}")]
    Input(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("memory guard: {0}")]
    MemoryGuard(String),

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("unsupported power {power} (maximum {max})")]
    UnsupportedPower { power: u32, max: u32 },

    #[error("basis truncation: {0}")]
    Truncation(String),

    #[error("seed at node: {0}")]
    Seed(String),

    #[error("missing quantity '{requested}', available: {available:?}")]
    MissingQuantity {
        requested: String,
        available: Vec<String>,
    },

    #[error("incompatible runs: {0}")]
    IncompatibleRuns(String),

    #[error("schema: {0}")]
    Schema(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
