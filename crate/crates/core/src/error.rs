use thiserror::Error;

use crate::formulas::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element `{0}` is not in the carrier")]
    UnknownElement(String),
    #[error("index {index} is outside a carrier of size {size}")]
    Domain { index: usize, size: usize },
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("{law} violated at {gamma}")]
    LawViolation { law: &'static str, gamma: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("missing operator: {0}")]
    MissingOperator(&'static str),
    #[error("fusion is not commutative: {0}")]
    NonCommutativeFusion(String),
    #[error("not applicable: {0}")]
    Inapplicable(String),
    #[error("connective `{0}` has no interpretation in the algebra")]
    Uninterpreted(String),
    #[error("formula `{0}` lies outside the fragment")]
    OutsideFragment(String),
}
