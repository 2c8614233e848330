use thiserror::Error;

use crate::dimension::DimensionEstimate;
use crate::entropy::EntropyBounds;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("base out of range: {0}")]
    BaseOutOfRange(String),

    #[error("comparison undecided at depth {depth}")]
    UndecidedAtDepth { depth: usize },

    #[error("size cap exceeded: {required} items required, cap is {cap}")]
    CapExceeded { required: u128, cap: u128 },

    #[error("no separating depth found up to {cap}")]
    NotFound { cap: usize },

    #[error("graph carries no bi-infinite walk")]
    EmptyGraph,

    #[error("tolerance not reached at depth {}; best gap {}", best.depth, best.gap_f64())]
    ToleranceNotReached { best: Box<EntropyBounds> },

    #[error("certificate depth {depth} exceeded before the requested width was reached")]
    CertificateDepthExceeded { depth: usize },

    #[error("all {depth} computed digits equal the largest digit")]
    DepthExceeded { depth: usize },

    #[error("base lies in the uncertainty interval of the Komornik-Loreti constant")]
    AmbiguousRegion { conservative: Box<DimensionEstimate> },

    #[error("prefix is not greedy admissible: {0}")]
    NotAdmissible(String),

    #[error("degenerate interval triple: q1 = 1")]
    DegenerateBoundary,

    #[error("range error: {0}")]
    RangeError(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
