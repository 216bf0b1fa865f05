use thiserror::Error;

/// Errors raised by the validated-numerics layer and the campaign driver.
///
/// Failures to *verify* something (a covering that does not pass, a pair of
/// sets that cannot be separated) are reported through verdicts, not errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("box has zero width in every coordinate")]
    DegenerateBox,

    #[error("pivot interval contains zero at column {column}; inverse cannot be verified")]
    SingularMatrix { column: usize },

    #[error("determinant enclosure {lo:e}..{hi:e} contains zero")]
    IndeterminateSign { lo: f64, hi: f64 },

    #[error("h-set has no exit set (u = 0)")]
    EmptyExitSet,

    #[error("map `{0}` has no inverse evaluator")]
    MissingInverse(String),

    #[error("symmetric image of `{0}` is not exactly representable")]
    InexactImage(String),

    #[error("word is inadmissible: no edge {from} -> {to} at position {position}")]
    InadmissibleWord {
        position: usize,
        from: String,
        to: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
