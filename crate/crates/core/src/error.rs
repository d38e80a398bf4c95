use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error{}{}: {message}",
        .field.as_ref().map(|f| format!(" in `{f}`")).unwrap_or_default(),
        .line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Config {
        field: Option<String>,
        line: Option<usize>,
        message: String,
    },

    #[error("singular input: {0}")]
    Singular(String),

    #[error("moment matching failed: {0}")]
    MatchingFailure(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn config(field: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Config {
            field: Some(field.into()),
            line: None,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
