//! Error type shared across the crate.

use std::fmt;

/// Errors surfaced by state construction, series evaluation and optimization.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside its mathematical domain.
    Domain(String),
    /// A fixed cutoff is too small for the requested truncation tolerance.
    Truncation { required: usize, requested: usize },
    /// An adaptive evaluation failed to converge within its resource cap.
    Convergence(String),
    /// The configured baseline squeezing cannot reach the optimal y2.
    InfeasibleBaseline {
        beta: f64,
        y2_opt: f64,
        y_available: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Truncation {
                required,
                requested,
            } => write!(
                f,
                "cutoff {requested} too small: truncation tolerance needs at least {required}"
            ),
            Error::Convergence(msg) => write!(f, "convergence failure: {msg}"),
            Error::InfeasibleBaseline {
                beta,
                y2_opt,
                y_available,
            } => write!(
                f,
                "baseline infeasible at beta = {beta}: optimal y2 = {y2_opt} exceeds \
                 available y = {y_available}"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
