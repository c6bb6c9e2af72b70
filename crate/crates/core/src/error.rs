use thiserror::Error;

use crate::expr::{EvalError, ParseError};
use crate::model::{Side, Violation};

pub type Result<T, E = SolverError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("invalid problem: {}", join_violations(.0))]
    InvalidProblem(Vec<Violation>),

    #[error("solution diverged on the {side} subinterval at node {node} (lambda = {lambda})")]
    Divergence { side: Side, node: usize, lambda: f64 },

    #[error(transparent)]
    Eval(#[from] EvalError),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("trace grid has {found} steps per subinterval, problem uses {expected}")]
    GridMismatch { expected: usize, found: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("point {x} lies outside [-pi, pi]")]
    PointOutOfRange { x: f64 },

    #[error("the interface point 0 must be given as 0- or 0+")]
    InterfaceNeedsSide,

    #[error("lambda is within tolerance of an eigenvalue (lambda = {lambda}, Omega = {omega:e})")]
    NearSpectrum { lambda: f64, omega: f64 },

    #[error("characteristic function does not change sign on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("eigenvalue scan reached lambda = {lambda_hi} with only {found} of {wanted} roots")]
    ScanExhausted {
        found: usize,
        wanted: usize,
        lambda_hi: f64,
    },

    #[error("eigenfunction at lambda = {lambda} has norm {norm:e}; spurious root")]
    TrivialEigenfunction { lambda: f64, norm: f64 },

    #[error("requested {requested} eigenpairs but the spectrum holds {available}")]
    NotEnoughEigenpairs { requested: usize, available: usize },

    #[error("operation requires an unshifted spectrum (shift = {shift})")]
    ShiftedSpectrum { shift: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("problem file: {0}")]
    Config(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
