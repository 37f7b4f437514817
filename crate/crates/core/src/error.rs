use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("parts must be positive integers")]
    ZeroPart,

    #[error("part {0} is not in S1")]
    NotInS1(u64),

    #[error("{0} is not a primitive element (not in S2)")]
    NotInS2(u64),

    #[error("invalid Euler pair: {0}")]
    InvalidPair(String),

    #[error("invalid parameters for {family}: {reason}")]
    InvalidParams { family: String, reason: String },

    #[error("{partition} is not in class {class}")]
    NotInClass { class: String, partition: String },

    #[error("malformed annotation: {0}")]
    MalformedAnnotation(String),

    #[error("series constant term {0} is not a unit")]
    NonUnitConstant(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(what: &'static str, detail: impl Into<String>) -> Error {
    Error::Parse {
        what,
        detail: detail.into(),
    }
}
