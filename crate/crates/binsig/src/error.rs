use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("width mismatch: expected {expected}, found {found}")]
    Width { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("point {0} is not in the orbit of the signal")]
    NotInOrbit(String),

    #[error("not eventually periodic: {0}")]
    NotEventuallyPeriodic(String),

    #[error("the signal is constant; {0}")]
    ConstantSignal(String),

    #[error("horizon too short: need at least {needed}, got {given}")]
    Horizon { needed: String, given: String },

    #[error("grid mismatch: breakpoint {at} falls strictly inside a sampling cell")]
    GridMismatch { at: String },

    #[error("conflicting edits at k={at}: {first} vs {second}")]
    EditConflict {
        at: i64,
        first: String,
        second: String,
    },

    #[error("edit is not representable: {0}")]
    Representation(String),

    #[error("window error: {0}")]
    Window(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by malformed input text rather than by analysis.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
