use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("polynomial {poly:#x} is not primitive of degree {degree}")]
    NotPrimitive { degree: u32, poly: u32 },
    #[error("unsupported extension degree {0} (expected 1..=8)")]
    UnsupportedDegree(u32),
    #[error("mismatched circulant sizes {0} and {1}")]
    RingMismatch(usize, usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("determinant of a {0}x{0} matrix is not supported (maximum 6)")]
    UnsupportedSize(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("base matrix is empty")]
    EmptyMatrix,
    #[error("base matrix entry ({row}, {col}) is {value}, expected 0 or 1")]
    NonBinary { row: usize, col: usize, value: i64 },
    #[error("edge ({0}, {1}) has no assigned monomial")]
    Unassigned(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn in_file(self, path: &std::path::Path) -> Self {
        Error::File {
            path: path.display().to_string(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
