use std::fmt;
use std::io;
use std::path::PathBuf;

#[derive(Debug)]
pub enum Error {
    Core(semifib_core::Error),
    Io {
        path: PathBuf,
        source: io::Error,
    },
    Json(serde_json::Error),
    /// Expression syntax error at a byte offset.
    Parse {
        pos: usize,
        msg: String,
    },
    UnknownSuite(String),
    InvalidRange {
        lo: f64,
        hi: f64,
    },
    InvalidCount(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Core(e) => e.fmt(f),
            Error::Io { path, source } => write!(f, "{}: {source}", path.display()),
            Error::Json(e) => write!(f, "json: {e}"),
            Error::Parse { pos, msg } => write!(f, "parse error at offset {pos}: {msg}"),
            Error::UnknownSuite(name) => write!(f, "unknown suite `{name}`"),
            Error::InvalidRange { lo, hi } => write!(f, "invalid range [{lo}, {hi}]: need finite lo < hi"),
            Error::InvalidCount(n) => write!(f, "invalid sample count {n}: need at least 2"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Core(e) => Some(e),
            Error::Io { source, .. } => Some(source),
            Error::Json(e) => Some(e),
            _ => None,
        }
    }
}

impl From<semifib_core::Error> for Error {
    fn from(e: semifib_core::Error) -> Self {
        Error::Core(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e)
    }
}
