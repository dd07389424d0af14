use std::path::PathBuf;

use thiserror::Error;

use crate::solve::SolveReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("feasible region is empty or unbounded")]
    EmptyOrUnbounded,

    #[error("polytope is not canonical: {0}")]
    NotCanonical(String),

    #[error("polytope is not full-dimensional: vertices span dimension {found}, expected {expected}")]
    DegeneratePolytope { expected: usize, found: usize },

    #[error("outside the domain: {0}")]
    DomainViolation(String),

    #[error("integration failed: {0}")]
    IntegrationFailure(String),

    #[error(
        "solver stopped after {} iterations without converging (gradient norm {:.3e})",
        .0.iterations,
        .0.gradient_norm
    )]
    NotConverged(Box<SolveReport>),

    #[error("invalid valuation data: {0}")]
    InvalidValuationData(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
