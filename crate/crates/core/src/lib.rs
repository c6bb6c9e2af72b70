//! Spectral solver for Sturm-Liouville problems on two subintervals
//! `[-π, 0)` and `(0, π]` coupled by transmission conditions at `0`.

// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod exec;
pub mod expansion;
pub mod expr;
pub mod fixtures;
pub mod green;
pub mod integrate;
pub mod model;
pub mod options;
pub mod quadrature;
pub mod shoot;
pub mod spectrum;
pub mod verify;

pub use error::{Result, SolverError};
pub use exec::Execution;
pub use expr::Expression;
pub use model::{FullTrace, Point, Side, TransmissionMatrix, TwoIntervalProblem};
pub use options::SolverOptions;
pub use spectrum::{compute_spectrum, Spectrum};
