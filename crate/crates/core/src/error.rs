use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("grid shape mismatch: {left} vs {right}")]
    ShapeMismatch {
        left: crate::GridShape,
        right: crate::GridShape,
    },
    #[error("grid dimensions must be positive, got {height}x{width}")]
    EmptyShape { height: usize, width: usize },
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("probability {value} at index {index} is outside [0, 1]")]
    ProbabilityOutOfRange { index: usize, value: f64 },
    #[error("budget {budget} is outside 0..={len}")]
    BudgetOutOfRange { budget: usize, len: usize },
    #[error("equispaced budget of {budget} lines cannot hold {center} center lines; use a smaller center fraction")]
    CenterExceedsBudget { budget: usize, center: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("mask kind does not match: {0}")]
    KindMismatch(&'static str),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("metric undefined: {0}")]
    UndefinedMetric(&'static str),
    #[error("numerical failure at iteration {iteration}: {what}")]
    NumericalFailure {
        iteration: usize,
        what: &'static str,
    },
}

impl Error {
    pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected, found })
        }
    }
}
