use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),

    #[error("line {line}: {message}")]
    ParseLine { line: usize, message: String },

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Geometry(#[from] ropelength::Error),

    #[error("expectation violated: {0}")]
    Expectation(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
}

impl CliError {
    /// Process exit code: 1 parse, 2 geometry, 3 expectation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::ParseLine { .. } | CliError::Io { .. } | CliError::UnknownFixture(_) => 1,
            CliError::Geometry(_) => 2,
            CliError::Expectation(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
