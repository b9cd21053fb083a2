use thiserror::Error;

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A quantity that must be positive and finite was not.
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    /// Geometry collapsed (or came within tolerance of collapsing) out of the
    /// L-form. The message names the valid alternative.
    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    /// A ratio interval that cannot host the requested optimum.
    #[error("invalid interval: {0}")]
    Interval(String),

    /// Inputs that contradict each other, such as an envelope below the
    /// attainable minimum for its volume and ratio.
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),

    /// An objective returned NaN or infinity during a numerical search.
    #[error("objective is not finite at {point:?}")]
    NonFiniteEval { point: Vec<f64> },

    /// Malformed input while reading building specs.
    #[error("parse error at {locus}: {detail}")]
    Parse { locus: String, detail: String },

    /// Well-formed input that violates a model invariant.
    #[error("invalid record at {locus}: {detail}")]
    Validation { locus: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
