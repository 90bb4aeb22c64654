//! Crate-wide error type.

/// Errors produced by any module in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied value violated an operation's preconditions.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A text input (CSV, model file body) could not be parsed.
    /// `line` is the 1-based line number in the source file.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An inconsistent or unusable configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// The separation matrix picked up non-finite entries during an update.
    /// `epoch` and `sample` locate the offending update within the current
    /// training pass (both 0 for a standalone single-sample update).
    #[error("training diverged at epoch {epoch}, sample {sample}: non-finite separation matrix")]
    Diverged { epoch: usize, sample: usize },

    /// A model file violated the documented schema.
    #[error("model format error: {0}")]
    ModelFormat(String),

    /// A diagnostic could not be computed (e.g. singular product matrix).
    #[error("diagnostic error: {0}")]
    Diagnostic(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
