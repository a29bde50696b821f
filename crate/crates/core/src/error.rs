use thiserror::Error;

use crate::polyring::Ring;
use crate::text::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("the width symbol `a` cannot be differentiated")]
    WidthNotDifferentiable,

    #[error("spatial dimension {requested} exceeds the ring's {available}")]
    DimensionTooLarge { requested: usize, available: usize },

    #[error("multi-index has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("negative powers of `{var}` can only be substituted by a nonzero constant")]
    NonConstantSubstitution { var: String },

    #[error("layer width must be positive, got {0}")]
    InvalidWidth(String),

    #[error("polynomial involves the formal width symbol `a`")]
    WidthInPolynomial,

    #[error("operation requires spatial dimension {expected}, got {got}")]
    UnsupportedDimension { expected: usize, got: usize },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("internal inconsistency: solution residuals are nonzero ({0})")]
    Inconsistent(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("quadrature did not converge: estimated error {estimate:e} exceeds {target:e}")]
    Quadrature { estimate: f64, target: f64 },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("malformed polynomial json: {0}")]
    Json(String),
}
