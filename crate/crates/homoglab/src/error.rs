use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed graph6 input. `offset` is the byte position of the defect.
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    /// An argument violated a documented precondition.
    #[error("invalid input: {0}")]
    InputDomain(String),

    /// A backtracking search exceeded its node budget. Never a silent
    /// wrong answer: the caller sees exactly which phase gave up.
    #[error("budget exhausted in {context} (cap {limit} nodes)")]
    Budget { context: String, limit: u64 },

    /// The requested operation does not apply to this structure
    /// (e.g. a unary expansion of a vertex-transitive graph).
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(offset: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            reason: reason.into(),
        }
    }

    pub fn domain(reason: impl Into<String>) -> Self {
        Error::InputDomain(reason.into())
    }
}
