use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid character {0:?} in sequence")]
    InvalidBase(char),

    #[error("degenerate base {0:?} where a concrete base is required")]
    DegenerateBase(char),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("vertex {0} is not live")]
    DeadVertex(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
