use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed textual input; `pos` is a 0-based character offset.
    #[error("parse error at column {}: {msg}", pos + 1)]
    Parse { pos: usize, msg: String },

    #[error("invalid xi: {0}")]
    InvalidXi(String),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An orbit point lands exactly on a window endpoint and the system
    /// was configured to reject such boundary hits.
    #[error("orbit point at k = {k} lies exactly on a window endpoint")]
    SingularOrbit { k: i64 },

    #[error("window has {0} intervals, the Kesten condition needs exactly one")]
    MultiIntervalWindow(usize),

    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },

    #[error("point pattern is empty")]
    EmptyPattern,

    #[error("instance of {got} points exceeds the brute-force cap of {cap}")]
    SizeCap { got: usize, cap: usize },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
