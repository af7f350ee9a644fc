use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The caller combined otherwise valid inputs in an unsupported way.
    #[error("usage error: {0}")]
    Usage(String),

    /// The target function returned a non-finite value at a quadrature node.
    #[error("target function is not finite at t = {node} (value {value})")]
    NonFinite { node: f64, value: f64 },

    /// An experiment specification field failed validation.
    #[error("invalid configuration for `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("I/O error on {}: {source}", path.display())]
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

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
