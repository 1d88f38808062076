use std::fmt;

use thiserror::Error;

/// Position in a source file, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub file: String,
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.col)
    }
}

/// Problems found while reading documents, all reported before any check
/// runs.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("{loc}: syntax error: {message}")]
    Syntax { loc: Location, message: String },
    #[error("{second}: duplicate definition of `{name}` (first defined at {first})")]
    DuplicateName {
        name: String,
        first: Location,
        second: Location,
    },
    #[error("unresolved reference `{name}` in `{referenced_by}`")]
    Unresolved { name: String, referenced_by: String },
    #[error("`{name}` is a {found}, expected {expected}")]
    WrongKind {
        name: String,
        expected: String,
        found: &'static str,
    },
    #[error("{loc}: `{name}`: {message}")]
    Dimension {
        name: String,
        loc: Location,
        message: String,
    },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}
