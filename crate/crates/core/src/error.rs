use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid input: {0}")]
    Input(String),

    /// A named domain invariant does not hold for the supplied data.
    #[error("{invariant}: {detail}")]
    Invariant {
        invariant: &'static str,
        detail: String,
    },

    #[error("{pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("{what} exceeds budget ({consumed} > {limit})")]
    Budget {
        what: &'static str,
        limit: u64,
        consumed: u64,
    },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("extension is not reduced: {0}")]
    NotReduced(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invariant(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant {
            invariant,
            detail: detail.into(),
        }
    }

    /// True for failures caused by user-supplied data rather than limits or
    /// internal faults.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DegreeMismatch(..)
                | Error::InvalidPermutation(_)
                | Error::Input(_)
                | Error::Invariant { .. }
                | Error::Schema { .. }
                | Error::Unsupported(_)
                | Error::NotReduced(_)
                | Error::Io { .. }
        )
    }

    pub fn is_budget_error(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
