use thiserror::Error;

use crate::intervals::Interval;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("interval [{},{}] is out of range for n = {n}", .interval.birth, .interval.death)]
    IntervalOutOfRange { interval: Interval, n: usize },

    #[error("orientation mismatch: {0}")]
    OrientationMismatch(String),

    #[error("commutative ladder CL_{n} is representation-infinite (only n <= 4 has finitely many indecomposables)")]
    RepresentationInfinite { n: usize },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("impermissible operation: {0}")]
    Impermissible(String),

    #[error("iteration cap exceeded: {0}")]
    IterationCap(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
