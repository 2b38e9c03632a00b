use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("map is not well defined: source relation {relation} does not land in the target relations")]
    NotWellDefined { relation: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("exact division failed: {0}")]
    ExactDivisionFailed(String),
    #[error("crossed condition D∘t = p·t∘D fails: {0}")]
    CrossedConditionFailed(String),
    #[error("not an S-module: relation {0} violated")]
    RelationViolation(String),
    #[error("EF2 is only defined for p = 2 (got p = {0})")]
    WrongPrime(u32),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("ring has {size} elements, above the bound {bound}")]
    TooLarge { size: String, bound: u64 },
    #[error("ideal is not nilpotent")]
    NotNilpotent,
    #[error("projection W -> W/J does not split: {0}")]
    NotSplit(String),
    #[error("map is not an isomorphism: {0}")]
    NotIso(String),
    #[error("degree bound exceeded: {0}")]
    DegreeBound(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
