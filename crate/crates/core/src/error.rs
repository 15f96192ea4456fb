//! Error types shared across the crate.
//!
//! Domain errors indicate a caller bug (arguments outside a function's
//! mathematical domain) and are distinguished from accuracy errors, which
//! mean a requested tolerance could not be met and carry the best value
//! obtained so the caller can decide whether to retune.

use crate::two_free::NeumannSolution;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A tolerance was not met; carries the best value and its error bound.
    #[error("accuracy error in {context}: value {value:e}, error estimate {error_estimate:e}")]
    Accuracy {
        context: String,
        value: f64,
        error_estimate: f64,
    },

    /// The coupled-interval series hit its term cap before the geometric
    /// tail bound dropped below tolerance. The partial solution is kept.
    #[error("series did not converge: tail bound {tail_bound:e} after {terms} terms")]
    SeriesNotConverged {
        partial: Box<NeumannSolution>,
        tail_bound: f64,
        terms: usize,
    },

    /// A condition that should be impossible by the underlying theory.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
