use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the set where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The truncated product could not be certified within the term budget.
    #[error("convergence error: tail bound needs {needed} terms, budget is {max_terms}")]
    Convergence { needed: u64, max_terms: usize },

    /// The grid is too coarse to resolve the punctures.
    #[error("resolution error: {0}")]
    Resolution(String),

    #[error("expected exactly one connected component, found {0}")]
    MultiComponent(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("empty sweep range: {0}")]
    EmptyRange(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("failed to parse raster: {0}")]
    Raster(String),

    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
