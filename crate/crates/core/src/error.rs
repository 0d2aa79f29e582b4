use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}: file is not valid UTF-8")]
    Encoding(PathBuf),

    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    #[error("cycle in type hierarchy through `{0}`")]
    Cycle(String),

    #[error("unknown concept `{0}`")]
    UnknownConcept(String),

    #[error("concept `{0}` does not reach the root `entity`")]
    Unrooted(String),

    #[error("duplicate {what} `{key}`")]
    Duplicate { what: &'static str, key: String },

    #[error("{found} mentions exceed the resolver cap of {cap}")]
    CapExceeded { found: usize, cap: usize },

    #[error("brute-force oracle accepts at most {max} mentions, got {found}")]
    OracleTooLarge { found: usize, max: usize },

    #[error("{path}: invalid gold annotation: {message}")]
    Gold { path: PathBuf, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(file: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            file: file.to_string(),
            line,
            message: message.into(),
        }
    }
}
