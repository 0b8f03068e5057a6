use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
    #[error("composition requires an inner series with zero constant term")]
    NonzeroConstantTerm,
    #[error("series is not reversible: it needs f(0) = 0 and f'(0) != 0")]
    NotReversible,
    #[error("series has the wrong constant term for {0}")]
    BadConstantTerm(&'static str),
    #[error("operator `{0}` is not a delta operator")]
    NotDeltaOperator(String),
    #[error("grid supplies {available} nodes but {needed} are required")]
    InsufficientNodes { needed: usize, available: usize },
    #[error("{what}: requested {requested} exceeds cap {cap} (raise the cap to proceed)")]
    CapExceeded {
        what: &'static str,
        requested: u128,
        cap: u128,
    },
    #[error("count evaluated to {0}, which is not a nonnegative integer")]
    NonIntegerResult(Rational),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
