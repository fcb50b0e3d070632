use std::fmt;

/// Errors produced by the solver toolkit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Strip width outside the supported range `1..=MAX_WIDTH`.
    InvalidWidth { width: usize, max: usize },
    /// Rectangle length outside the supported range.
    InvalidLength { length: usize, max: usize },
    /// A placement that is not legal for the fringe it was applied to.
    IllegalPlacement(String),
    /// An operation would exceed the memory cap; carries a human-readable
    /// account of what was being allocated.
    CapacityExceeded {
        what: String,
        needed_mb: u64,
        cap_mb: u64,
    },
    /// A search exhausted its node/relaxation budget before completing.
    /// Distinct from a negative result: the search was cut short.
    BudgetExhausted { what: String, budget: u64 },
    /// Malformed digraph document during import.
    InvalidDocument(String),
    /// Argument combination rejected by an operation's precondition.
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidWidth { width, max } => {
                write!(f, "width {width} unsupported (must be in 1..={max})")
            }
            Error::InvalidLength { length, max } => {
                write!(f, "length {length} unsupported (must be in 1..={max})")
            }
            Error::IllegalPlacement(msg) => write!(f, "illegal placement: {msg}"),
            Error::CapacityExceeded {
                what,
                needed_mb,
                cap_mb,
            } => write!(
                f,
                "capacity exceeded: {what} needs ~{needed_mb} MB, cap is {cap_mb} MB \
                 (set GAPNUM_MAX_MEM_MB to raise)"
            ),
            Error::BudgetExhausted { what, budget } => {
                write!(f, "search budget exhausted: {what} (budget {budget})")
            }
            Error::InvalidDocument(msg) => write!(f, "invalid digraph document: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
