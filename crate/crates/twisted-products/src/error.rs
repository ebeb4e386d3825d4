use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported level {0}")]
    UnsupportedLevel(u32),
    #[error("unsupported weight {0}")]
    UnsupportedWeight(u32),
    #[error("unsupported class label {0:?}")]
    UnsupportedClass(String),
    #[error("no projection matrix for weight {weight}, level {level}, cusp {cusp}")]
    MissingProjection { weight: u32, level: u32, cusp: String },
    #[error("requested precision {requested} exceeds available {available}")]
    Precision { requested: i64, available: i64 },
    #[error("level {from} does not divide level {to}")]
    NotADivisor { from: u32, to: u32 },
    #[error("series is not in the span of the level {level} basis")]
    NotInSpan { level: u32 },
    #[error("factor monomial {0:?} is not positive or leaves the truncation cone")]
    BadFactor((i64, i64, i64)),
    #[error("series has no inverse: {0}")]
    NotInvertible(&'static str),
    #[error("truncation bounds differ")]
    BoundMismatch,
    #[error("power map has no entry for {class}^{power}")]
    MissingPower { class: String, power: u32 },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("not implemented: {0}")]
    NotImplemented(&'static str),
    #[error("data file: {0}")]
    Data(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
