//! Error type shared by every module of the crate.

/// Crate-wide error enum. The CLI maps these onto process exit codes, so the
/// variant split mirrors the failure families callers care about: bad
/// arguments, unreadable input, invalid structured data, exhausted search
/// budgets, and broken internal invariants.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on an operation's arguments was violated.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Input text could not be parsed. `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Structured input parsed fine but fails its validity checks
    /// (e.g. an edge partition that is not actually a partition).
    #[error("validation failed: {0}")]
    Validation(String),

    /// An exact search would exceed the configured budget. Never silently
    /// approximated; the caller decides whether to raise the budget.
    #[error("budget exceeded: {message} (budget {budget})")]
    Resource { message: String, budget: u64 },

    /// An internal invariant did not hold. This signals a bug in the
    /// implementation, never a valid outcome.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn resource(msg: impl Into<String>, budget: u64) -> Self {
        Error::Resource { message: msg.into(), budget }
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, message: msg.into() }
    }
}
