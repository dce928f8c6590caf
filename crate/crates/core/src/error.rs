use thiserror::Error;

/// Errors raised anywhere in the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configuration value is missing, malformed or inconsistent.
    #[error("configuration error: {0}")]
    Config(String),
    /// Crack or element geometry could not be processed.
    #[error("geometry error: {0}")]
    Geometry(String),
    /// The discrete model is degenerate (singular mass, mechanisms, ...).
    #[error("model error: {0}")]
    Model(String),
    /// A numerical procedure failed to converge or produced non-finite values.
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Config(_) => 2,
            Error::Geometry(_) | Error::Model(_) | Error::Io(_) => 3,
            Error::Numerical(_) => 4,
        }
    }

    /// Prefix the message with the stage that produced it.
    pub fn context(self, stage: &str) -> Self {
        match self {
            Error::Domain(m) => Error::Domain(format!("{stage}: {m}")),
            Error::Config(m) => Error::Config(format!("{stage}: {m}")),
            Error::Geometry(m) => Error::Geometry(format!("{stage}: {m}")),
            Error::Model(m) => Error::Model(format!("{stage}: {m}")),
            Error::Numerical(m) => Error::Numerical(format!("{stage}: {m}")),
            Error::Io(e) => Error::Io(e),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
