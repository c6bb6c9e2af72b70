//! Reference problems with known closed-form behaviour.

use std::f64::consts::PI;

use crate::expr::Expression;
use crate::model::{TransmissionMatrix, TwoIntervalProblem};

fn expr(text: &str) -> Expression {
    Expression::parse(text).expect("fixture expression")
}

/// Classical Dirichlet problem: `p = 1`, `q = 0`, continuous gluing.
/// Eigenvalues `(k/2)^2`, `k = 1, 2, ...`.
pub fn c0() -> TwoIntervalProblem {
    TwoIntervalProblem::new(
        1.0,
        1.0,
        0.0,
        0.0,
        expr("0"),
        expr("0"),
        TransmissionMatrix::continuity(),
    )
}

/// Jump in the value: `y(0+) = 2 y(0-)`, `y'(0+) = y'(0-)`.
/// Characteristic function `-(3/2) sin(2πs)/s`.
pub fn c1() -> TwoIntervalProblem {
    TwoIntervalProblem::new(
        1.0,
        1.0,
        0.0,
        0.0,
        expr("0"),
        expr("0"),
        jump_matrix(),
    )
}

pub fn jump_matrix() -> TransmissionMatrix {
    TransmissionMatrix::new([[1.0, 0.0, -2.0, 0.0], [0.0, 1.0, 0.0, -1.0]])
}

/// Robin ends with a smooth potential: `α = π/4`, `β = π/3`, `q = 1 + x²`.
pub fn c2() -> TwoIntervalProblem {
    TwoIntervalProblem::new(
        1.0,
        1.0,
        PI / 4.0,
        PI / 3.0,
        expr("1+x^2"),
        expr("1+x^2"),
        TransmissionMatrix::continuity(),
    )
}

/// `c0` with `q = -1/4`, which puts the lowest eigenvalue at exactly zero.
pub fn zero_mode() -> TwoIntervalProblem {
    TwoIntervalProblem::new(
        1.0,
        1.0,
        0.0,
        0.0,
        expr("-0.25"),
        expr("-0.25"),
        TransmissionMatrix::continuity(),
    )
}

/// Unequal `p`, a general transmission matrix and a non-symmetric potential.
pub fn skewed() -> TwoIntervalProblem {
    TwoIntervalProblem::new(
        1.0,
        4.0,
        0.3,
        -0.6,
        expr("cos(x)"),
        expr("2-x/2"),
        TransmissionMatrix::new([[2.0, 0.5, -1.0, 0.3], [0.1, 1.0, 0.2, -1.5]]),
    )
}

pub const NAMES: [&str; 5] = ["c0", "c1", "c2", "zero-mode", "skewed"];

/// Looks up a fixture by its short name.
pub fn by_name(name: &str) -> Option<TwoIntervalProblem> {
    match name {
        "c0" => Some(c0()),
        "c1" => Some(c1()),
        "c2" => Some(c2()),
        "zero-mode" => Some(zero_mode()),
        "skewed" => Some(skewed()),
        _ => None,
    }
}
