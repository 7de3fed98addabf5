//! Error type shared by every module.
//!
//! Contract violations carry a machine-readable `constraint` identifier of the
//! form `Type.invariant` (for example `GTPattern.interlacing`). The CLI copies
//! it verbatim into its diagnostic documents.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input broke an operation's precondition or a type invariant.
    #[error("{constraint}: {detail}")]
    Contract {
        constraint: &'static str,
        detail: String,
    },
    /// Exact arithmetic would leave the 64-bit range.
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    /// The colored-partition map was asked for a shift below the box count.
    #[error("shift k = {k} is below d = {d}; the image may not be a POP")]
    OutsideStableShift { k: u64, d: u64 },
    /// No POP with the requested weight exists.
    #[error("no POP has weight {0:?}")]
    WeightAbsent(Vec<i64>),
    /// A result that is guaranteed by construction failed its check.
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn contract(constraint: &'static str, detail: impl Into<String>) -> Self {
        Error::Contract {
            constraint,
            detail: detail.into(),
        }
    }

    /// The identifier of the violated constraint.
    pub fn constraint(&self) -> &str {
        match self {
            Error::Contract { constraint, .. } => constraint,
            Error::Overflow(_) => "arithmetic.overflow",
            Error::OutsideStableShift { .. } => "shift.outside_stable_range",
            Error::WeightAbsent(_) => "weight.absent",
            Error::Internal(_) => "internal",
        }
    }
}

/// Ensure `cond`, or fail with a contract violation.
pub(crate) fn ensure(cond: bool, constraint: &'static str, detail: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::contract(constraint, detail()))
    }
}
