use std::path::PathBuf;

use thiserror::Error;

use crate::tables::TableError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape mismatch in {context}: expected {expected}, found {found}")]
    ShapeMismatch {
        context: &'static str,
        expected: String,
        found: String,
    },

    #[error("coefficient table: {0}")]
    Table(#[from] TableError),

    #[error("method `{method}` requires a {expected} table, got {found}")]
    WrongKind {
        method: &'static str,
        expected: &'static str,
        found: &'static str,
    },

    #[error("non-finite state after step {step} (t = {t})")]
    NonFinite { step: usize, t: f64 },

    #[error("unknown emission dialect `{0}`")]
    UnknownDialect(String),

    #[error("template error: {0}")]
    Template(String),

    #[error("code generation: {0}")]
    Codegen(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv {}: {message}", path.display())]
    Csv { path: PathBuf, message: String },

    #[error("no trajectory passed the adequacy check ({rejected} rejected)")]
    NoAcceptedTrajectories { rejected: u64 },

    #[error("worker {index} failed: {source}")]
    Worker {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn shape(context: &'static str, expected: impl ToString, found: impl ToString) -> Self {
        Error::ShapeMismatch {
            context,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True when the failure is numerical (a state blew up) rather than a
    /// usage or I/O problem.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NonFinite { .. } | Error::NoAcceptedTrajectories { .. } => true,
            Error::Worker { source, .. } => source.is_numerical(),
            _ => false,
        }
    }

    pub fn is_io(&self) -> bool {
        match self {
            Error::Io { .. } | Error::Csv { .. } => true,
            Error::Worker { source, .. } => source.is_io(),
            _ => false,
        }
    }
}
