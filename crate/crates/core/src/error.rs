use thiserror::Error;

use crate::report::CheckReport;

/// Errors raised by constructors and operations whose preconditions fail.
///
/// Failed *checks* are not errors: they come back as a [`CheckReport`] with
/// `passed == false`. An `Error` means the operation could not run at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("order {order} exceeds the order cap {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("table is not a group: {}", .0.detail)]
    NotAGroup(CheckReport),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("precondition failed: {detail}")]
    Precondition { detail: String, witness: Vec<usize> },

    #[error("subgroup is not normal (conjugating witness {witness:?})")]
    NotNormal { witness: Vec<usize> },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn contract(report: &CheckReport) -> Self {
        Error::Contract(format!("{} failed: {}", report.check, report.detail))
    }
}
