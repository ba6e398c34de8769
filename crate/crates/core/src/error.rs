use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter `{param}` for family `{family}`: {reason}")]
    InvalidParameter {
        family: &'static str,
        param: &'static str,
        reason: String,
    },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A resource guard refused the request. `estimate` is the size that
    /// would have been produced, when known.
    #[error("{what} exceeds the cap of {limit} (requested {estimate})")]
    CapExceeded {
        what: &'static str,
        limit: String,
        estimate: String,
    },

    #[error("degree bound mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("cannot parse color sequence: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
