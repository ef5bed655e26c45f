use alloc::string::String;

use crate::model::FeatureId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid schema: {0}")]
    Schema(String),

    /// Malformed node table: dangling references, duplicate ids, shared children.
    #[error("malformed tree: {0}")]
    Structure(String),

    #[error("invalid literal on {feature}: {reason}")]
    Literal { feature: FeatureId, reason: String },

    #[error("not a complete point: {0}")]
    Incomplete(String),

    #[error("partial assignment is inconsistent")]
    Inconsistent,

    #[error("unknown class `{0}`")]
    UnknownClass(String),

    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("class sets differ")]
    ClassMismatch,

    #[error("unsupported schema: {0}")]
    Unsupported(String),

    #[error("{what} exceeds cap ({size} > {cap})")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("term cap exceeded ({0} terms)")]
    TermCap(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
