use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Failure to load one of the lexical resources or the stop list.
#[derive(Debug, Error)]
pub enum ResourceError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{origin}:{line}: {message}")]
    Malformed {
        origin: String,
        line: usize,
        message: String,
    },
}

impl ResourceError {
    pub(crate) fn malformed(origin: &str, line: usize, message: impl Into<String>) -> Self {
        ResourceError::Malformed {
            origin: origin.to_string(),
            line,
            message: message.into(),
        }
    }
}

pub(crate) fn read_file(path: &std::path::Path) -> Result<String, ResourceError> {
    std::fs::read_to_string(path).map_err(|source| ResourceError::Io {
        path: path.to_path_buf(),
        source,
    })
}
