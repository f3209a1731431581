use thiserror::Error;

/// Errors raised by space, map, solver and probe operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed argument: wrong dimension, non-finite coordinate, parameter out of range.
    #[error("input error: {0}")]
    Input(String),

    /// The convex structure is undefined at the requested arguments.
    #[error("singularity: {0}")]
    Singularity(String),

    /// A contraction family was requested on a space that cannot express it.
    #[error("unsupported family: {0}")]
    Unsupported(String),

    /// A sampled computation had nothing to work with.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// An iterate or orbit produced non-finite coordinates.
    #[error("divergence: {0}")]
    Divergence(String),

    /// A documented precondition does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Inconsistent configuration, e.g. an empty sampling box.
    #[error("configuration error: {0}")]
    Config(String),

    /// A registry lookup missed.
    #[error("unknown {kind} '{name}'; known: {}", known.join(", "))]
    Lookup {
        kind: &'static str,
        name: String,
        known: Vec<String>,
    },

    /// Expression grammar error, `column` is 1-based.
    #[error("parse error at column {column} in '{source_text}': {message}")]
    Parse {
        source_text: String,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Short category name used in reports and CLI diagnostics.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Singularity(_) => "singularity",
            Error::Unsupported(_) => "unsupported",
            Error::Inconclusive(_) => "inconclusive",
            Error::Divergence(_) => "divergence",
            Error::Precondition(_) => "precondition",
            Error::Config(_) => "config",
            Error::Lookup { .. } => "lookup",
            Error::Parse { .. } => "parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
