use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate sampling")]
    DegenerateSampling,

    #[error("pole of Pochhammer: ({base})_{index}")]
    PochhammerPole { base: String, index: i64 },

    #[error("hypergeometric pole: lower parameter {param} vanishes before termination")]
    HypergeometricPole { param: String },

    #[error("hypergeometric series does not terminate and no term cap was supplied")]
    NonTerminating,

    #[error("resonant parameter: {0}")]
    ResonantParameter(String),

    #[error("exceptional parameter {0}; use the exceptional factorization instead")]
    ExceptionalParameter(String),

    #[error("parameters are outside the exceptional locus: {0}")]
    NotExceptional(String),

    #[error("unexpected pole structure: {0}")]
    UnexpectedPoleStructure(String),

    #[error("algebra bug: {0}")]
    AlgebraMismatch(String),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),
}
