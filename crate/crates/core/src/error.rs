//! Error type shared by every module.

use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// The CLI maps [`Error::Input`] to exit code 2, [`Error::Numerical`] to 3 and
/// [`Error::Admissibility`] to 4.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or inconsistent input (bad JSON, mismatched dimensions, violated precondition).
    #[error("input error: {0}")]
    Input(String),
    /// A numerical procedure could not produce a trustworthy answer.
    #[error("numerical error: {message}")]
    Numerical {
        message: String,
        /// Singular values (or other diagnostics) that triggered the failure, if any.
        spectrum: Vec<f64>,
    },
    /// A symbolic operation would produce a class that is not admissible.
    #[error("admissibility error: {0}")]
    Admissibility(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical { message: msg.into(), spectrum: Vec::new() }
    }

    pub fn numerical_with(msg: impl Into<String>, spectrum: Vec<f64>) -> Self {
        Error::Numerical { message: msg.into(), spectrum }
    }

    pub fn admissibility(msg: impl Into<String>) -> Self {
        Error::Admissibility(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 2,
            Error::Numerical { .. } => 3,
            Error::Admissibility(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
