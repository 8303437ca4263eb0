use thiserror::Error;

use crate::scalar::ParseError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("division by the zero field")]
    DivisionByZero,
    #[error("coordinate index {index} out of range for a chart of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: &'static str, found: &'static str },
    #[error("invalid component index {0}")]
    InvalidIndex(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("J∘Λ is not antisymmetric; residual (J·L + (J·L)ᵀ) entries: {residual:?}")]
    NotABivector { residual: Vec<String> },
    #[error("coordinate name `{0}` already used by the chart")]
    NameClash(String),
    #[error("field is not homogeneous of weight -1 in `{0}`")]
    NotHomogeneous(String),
    #[error("2-form is degenerate (zero determinant)")]
    Degenerate,
    #[error("not a locally conformal symplectic pair: {residuals:?}")]
    NotLcs { residuals: Vec<String> },
    #[error("tensor is not compatible with the Jacobi structure: {residuals:?}")]
    NotCompatible { residuals: Vec<String> },
    #[error("pair is not a Jacobi structure: {residuals:?}")]
    NotJacobi { residuals: Vec<String> },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("identity `{identity}` is missing input `{input}`")]
    MissingInput { identity: String, input: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
