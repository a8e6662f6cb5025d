use thiserror::Error;

/// Errors produced by the algebra, code and oracle layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("enumeration exceeded the limit of {limit} elements")]
    ResourceLimit { limit: usize },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("invalid stabilizer group: {0}")]
    InvalidGroup(String),

    #[error("invalid CWS code: {0}")]
    InvalidCode(String),

    #[error("no phase in <q_d> makes the extension free of nontrivial identity multiples")]
    PhaseUnrealizable,

    #[error("dense dimension {dimension} exceeds the oracle limit {limit}")]
    DimensionLimit { dimension: usize, limit: usize },

    #[error("document error at line {line}, column {column}: {message}")]
    Document {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        // serde_json appends " at line L column C"; keep the bare message.
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(cut) => message[..cut].to_string(),
            None => message,
        };
        Error::Document {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}
