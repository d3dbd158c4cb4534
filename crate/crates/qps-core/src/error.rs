//! Error types shared across the toolkit.

use thiserror::Error;

/// Errors produced by corpus loading, configuration parsing, phonetization,
/// matching and the CTC math.
#[derive(Debug, Error)]
pub enum Error {
    /// A line of a Tanzil-format file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A Moshaf configuration document is malformed or incomplete.
    #[error("configuration error: {0}")]
    Config(String),

    /// Input text contains a code point outside the accepted repertoire.
    #[error("input error at offset {offset}: unsupported code point U+{code:04X}")]
    Input { offset: usize, code: u32 },

    /// A rewrite operation was applied out of order or failed internally.
    #[error("pipeline error in operation {op} ({name}): {message}")]
    Pipeline {
        op: u8,
        name: &'static str,
        message: String,
    },

    /// The final rewrite stage produced a character with no phoneme mapping.
    #[error("encoding error at offset {offset}: unmapped character U+{code:04X}")]
    Encoding { offset: usize, code: u32 },

    /// Generic invalid-argument error for matching and CTC operations.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Alignment overrides are inconsistent with the word lists.
    #[error("alignment error: {0}")]
    Alignment(String),

    /// Binary logit file is malformed.
    #[error("logit file error: {0}")]
    LogitFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
