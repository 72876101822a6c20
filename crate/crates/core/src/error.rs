use thiserror::Error;

/// Errors produced by the framelab library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid group spec `{0}`: expected Z<n1>[xZ<n2>...] with every factor >= 2")]
    InvalidGroup(String),

    #[error("invalid element `{element}` for group {group}: {reason}")]
    InvalidElement {
        element: String,
        group: String,
        reason: String,
    },

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("capacity exceeded: {what} is {actual}, limit {limit}")]
    Capacity {
        what: &'static str,
        actual: u128,
        limit: u128,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("inconsistent angles: {0}")]
    InconsistentAngles(String),

    #[error("invalid operation: {0}")]
    InvalidOperation(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
