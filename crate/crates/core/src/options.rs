//! Default tolerances and scan parameters, kept in one place.

use crate::exec::Execution;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    pub execution: Execution,
    /// Bisection stops when the bracket is narrower than
    /// `refine_tol * max(1, |λ|)`.
    pub refine_tol: f64,
    /// `|Ω(λ)| < omega_zero_tol * scale` means `λ` is treated as an eigenvalue.
    pub omega_zero_tol: f64,
    /// Scan spacing in `s = √λ` for `λ ≥ 0`, before any `p` scaling.
    pub s_resolution: f64,
    /// Scan spacing in `λ` below zero.
    pub negative_lambda_step: f64,
    /// Relative depth of a same-sign minimum of `|Ω|` flagged as a possible
    /// double root.
    pub tangential_tol: f64,
    /// The eigenvalue scan gives up above this `λ`.
    pub lambda_hi_limit: f64,
    /// Eigenfunctions with a smaller weighted norm are rejected.
    pub norm_floor: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            execution: Execution::default(),
            refine_tol: 1e-10,
            omega_zero_tol: 1e-8,
            s_resolution: 0.125,
            negative_lambda_step: 0.25,
            tangential_tol: 1e-6,
            lambda_hi_limit: 1e8,
            norm_floor: 1e-12,
        }
    }
}

impl SolverOptions {
    pub fn sequential() -> Self {
        SolverOptions {
            execution: Execution::Sequential,
            ..SolverOptions::default()
        }
    }
}
