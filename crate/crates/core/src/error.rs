use thiserror::Error;

/// Errors raised by the library.
///
/// Usage errors (bad arguments, unmet preconditions) are kept apart from
/// internal invariant failures so that front ends can map them to
/// different exit statuses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cyclotomic level mismatch: {left} vs {right}")]
    LevelMismatch { left: String, right: String },

    #[error("value is not rational: coordinate {index} is nonzero")]
    NotRational { index: usize },

    #[error("arithmetic invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by a failed
    /// internal consistency check.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::InvalidArgument(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::InvalidArgument(format!($($arg)*))
    };
}

macro_rules! ensure_arg {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err($crate::error::invalid!($($arg)*));
        }
    };
}

pub(crate) use ensure_arg;
pub(crate) use invalid;
