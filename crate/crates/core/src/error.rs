use std::fmt;

use thiserror::Error;

/// Location of a malformed token in a text input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseLocation {
    pub file: String,
    pub line: usize,
    pub token: String,
}

impl fmt::Display for ParseLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: near `{}`", self.file, self.line, self.token)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse {
        location: ParseLocation,
        message: String,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not a pseudomanifold: face {face:?} lies in {count} top simplices")]
    NotPseudomanifold { face: Vec<usize>, count: usize },

    #[error("map is not simplicial: {} source simplices have non-simplex images (first: {:?})", .violations.len(), .violations.first())]
    NotSimplicial { violations: Vec<Vec<usize>> },

    #[error("orientation unavailable: {0}")]
    OrientationUnavailable(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn parse(file: &str, line: usize, token: &str, message: impl Into<String>) -> Self {
        Error::Parse {
            location: ParseLocation {
                file: file.to_string(),
                line,
                token: token.to_string(),
            },
            message: message.into(),
        }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io { .. } => 4,
            _ => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
