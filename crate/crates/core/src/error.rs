//! Crate-wide error type.
//!
//! Every fallible operation returns [`enum@Error`]; variants are grouped by
//! failure class rather than by module so callers can match on what went
//! wrong (bad input file, violated invariant, unsupported request, …)
//! without caring where it was detected.

use thiserror::Error;

/// Unified error for all modules.
#[derive(Debug, Error)]
pub enum Error {
    /// Underlying I/O failure (file missing, unreadable, …).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A file or string could not be parsed. `context` names the document
    /// and, where known, the offending field/line.
    #[error("parse error: {context}: {message}")]
    Parse { context: String, message: String },

    /// Structurally valid input that violates a documented invariant.
    /// `invariant` is a stable machine-checkable name (e.g.
    /// `"mo_orthonormality"`); `message` carries the human diagnostic.
    #[error("validation error [{invariant}]: {message}")]
    Validation {
        invariant: &'static str,
        message: String,
    },

    /// Mismatched dimensions between related quantities.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Request outside the implemented envelope (e.g. analytic integrals
    /// for p shells, too many qubits for dense diagonalization).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An optimizer produced a non-finite objective; carries the iteration
    /// index and the parameter vector for post-mortem.
    #[error("non-finite objective at iteration {iteration}; theta = {theta:?}")]
    NonFinite { iteration: usize, theta: Vec<f64> },

    /// A dense linear-algebra routine failed (eigensolver did not converge,
    /// singular matrix, …).
    #[error("linear algebra failure: {0}")]
    Linalg(String),
}

impl Error {
    /// Shorthand for a [`Error::Parse`] with formatted context.
    pub fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }

    /// Shorthand for a [`Error::Validation`].
    pub fn validation(invariant: &'static str, message: impl Into<String>) -> Self {
        Error::Validation {
            invariant,
            message: message.into(),
        }
    }
}
