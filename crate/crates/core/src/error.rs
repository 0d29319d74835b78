use thiserror::Error;

/// Errors raised across the series, tree, map and solver layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("grading mismatch between operands")]
    GradingMismatch,
    #[error("series has a zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("monomial {monomial} has degree {degree} beyond truncation order {order}")]
    BeyondTruncation {
        monomial: String,
        degree: u32,
        order: u32,
    },
    #[error("odd exponent of s in monomial {0}")]
    OddHalfPower(String),
    #[error("monomial {0} has no positive power of the integration variable")]
    DivergentIntegral(String),
    #[error("substitution for {0} cannot terminate under the grading")]
    NonTerminatingSubstitution(String),
    #[error("series has a non-constant grade-0 term {0}; the operation would not terminate")]
    NonNilpotent(String),
    #[error("weight system is not convergent: {0}")]
    NonConvergent(String),
    #[error("singular linear system: {0}")]
    Singular(String),
    #[error("model inconsistency: {0}")]
    Model(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
