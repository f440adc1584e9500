use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("crossing {index} has {len} entries, expected 4")]
    Arity { index: usize, len: usize },
    #[error("arc {arc} appears {count} times, expected exactly twice")]
    ArcCount { arc: u32, count: usize },
    #[error("diagram is not planar")]
    NotPlanar,
    #[error("arc chain cannot be closed: {0}")]
    NotClosable(String),
    #[error("invalid braid: {0}")]
    Braid(String),
    #[error("invalid slope: {0}")]
    Slope(String),
    #[error("invalid template: {0}")]
    Template(String),
    #[error("index {index} out of range (size {size})")]
    OutOfRange { index: usize, size: usize },
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("family invariant violated: {0}")]
    Family(String),
    #[error("no transition found in range {lo}..{hi}; try a wider --range")]
    NoTransition { lo: i64, hi: i64 },
    #[error("ambiguous: {0}")]
    Ambiguous(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
