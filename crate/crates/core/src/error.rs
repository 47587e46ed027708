use std::path::PathBuf;

/// Errors raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("invalid sweep specification: {0}")]
    InvalidSpec(String),

    #[error("type error: {0}")]
    Type(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
