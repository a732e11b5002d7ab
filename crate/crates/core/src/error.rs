use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-invertible series: divisor has zero constant term")]
    NonInvertible,

    #[error("composition undefined: inner series has nonzero constant term")]
    NonZeroInnerConstant,

    #[error("degeneracy parameter must be nonzero for {0}")]
    ZeroLambda(&'static str),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("invalid distribution: {0}")]
    Profile(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("theorem precondition: {0}")]
    Precondition(String),

    #[error("unknown identifier: {0}")]
    Unknown(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("non-summable at given precision: {0}")]
    NonSummable(String),
}
