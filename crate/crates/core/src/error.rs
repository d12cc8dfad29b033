use alloc::boxed::Box;
use alloc::string::String;

use crate::oracle::CrossCheckFailure;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed input: non-square matrix, mixed orders, bad lengths.
    #[error("structural input error: {0}")]
    Structure(String),
    #[error("{what} = {value} exceeds the configured limit {limit}")]
    ResourceGuard {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    /// A vertex whose four arcs are not one of the six allowed configurations.
    /// Coordinates are 1-based.
    #[error("invalid flow grid: vertex ({i}, {j}) is not one of the six configurations")]
    InvalidFlowGrid { i: usize, j: usize },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported dimension {dimension} (at most {max})")]
    UnsupportedDimension { dimension: usize, max: usize },
    #[error("oracle cross-check failed at constraint {}", .0.constraint)]
    CrossCheck(Box<CrossCheckFailure>),
}
