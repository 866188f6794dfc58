use thiserror::Error;

use crate::freealg::{NcPoly, Word};
use crate::scalar::Scalar;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Parse failure with the byte offset into the input and the tokens that
/// would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<String>,
    pub found: Option<char>,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at position {}: expected one of [{}]", self.position, self.expected.join(", "))?;
        match self.found {
            Some(c) => write!(f, ", found {c:?}"),
            None => write!(f, ", found end of input"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("point is not on the nodal cubic: p^2 - q^2 - q^3 = {residual}")]
    ParameterOffCurve { residual: Scalar },

    #[error("tensor arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("parse error {0}")]
    Parse(#[from] ParseError),

    #[error("reduction fuel exhausted after {steps} steps")]
    FuelExhausted { partial: Box<NcPoly>, steps: usize },

    #[error("invalid rule {lhs}: {reason}")]
    InvalidRule { lhs: Word, reason: &'static str },

    #[error("no monomial of {difference} is eligible as a rule head")]
    NonOrientable { difference: Box<NcPoly> },

    #[error("completion limit exceeded ({rules} rules, limit {limit})")]
    LimitExceeded { rules: usize, limit: usize },

    #[error("{unresolved} ambiguities failed to resolve")]
    DiamondFailure { unresolved: usize },
}
