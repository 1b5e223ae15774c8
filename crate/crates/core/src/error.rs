use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input violates a type invariant.
    #[error("invalid input: {0}")]
    Validation(String),

    /// A value lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("zero-length segment between points {index} and {}", index + 1)]
    ZeroLengthSegment { index: usize },

    #[error("segments meeting at point {index} are antiparallel")]
    AntiparallelSegments { index: usize },

    #[error("degenerate tangent at sample {index}")]
    DegenerateTangent { index: usize },

    #[error("tangent sample {index} lies within the pole guard (theta = {theta:e} rad)")]
    PoleProximity { index: usize, theta: f64 },

    #[error("tangent trace is not closed: gap {gap:e} rad exceeds tolerance {tolerance:e} rad")]
    OpenTrace { gap: f64, tolerance: f64 },

    #[error("consecutive directions {index} and {} are separated by {angle:e} rad (limit {limit:e})", index + 1)]
    CoarseTrace {
        index: usize,
        angle: f64,
        limit: f64,
    },

    /// Two independent evaluations of the same quantity disagree.
    #[error("numerical consistency failure: {0}")]
    MethodDisagreement(String),

    #[error("signal band falls below the chamber cutoff for the {0} polarization")]
    SignalBelowCutoff(&'static str),

    #[error("empty sweep grid")]
    EmptySweep,
}

impl Error {
    /// True for failures of internal numerical cross-checks, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::MethodDisagreement(_))
    }
}
