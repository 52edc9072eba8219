use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{value} is outside the table range [1, {limit}]")]
    OutOfRange { value: u64, limit: u64 },

    #[error("table of limit {limit} needs {required} bytes, budget is {budget} bytes")]
    ResourceExhausted {
        limit: u64,
        required: u64,
        budget: u64,
    },

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("malformed table file: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
