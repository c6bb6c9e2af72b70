//! Problem files: TOML with `p1`, `p2`, `alpha`, `beta`, `q_left`, `q_right`,
//! `t_matrix` and an optional `grid_steps`.
//!
//! ```toml
//! p1 = 1.0
//! p2 = 1.0
//! alpha = "pi/4"      # float or constant expression
//! beta = 0.0
//! q_left = "1 + x^2"  # expression or number
//! q_right = 0
//! t_matrix = [[1, 0, -1, 0], [0, 1, 0, -1]]
//! grid_steps = 2048
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::error::{Result, SolverError};
use crate::expr::Expression;
use crate::model::{TransmissionMatrix, TwoIntervalProblem, DEFAULT_GRID_STEPS};

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Number(f64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    p1: f64,
    p2: f64,
    alpha: Scalar,
    beta: Scalar,
    q_left: Scalar,
    q_right: Scalar,
    t_matrix: [[f64; 4]; 2],
    grid_steps: Option<usize>,
}

fn angle(field: &str, value: Scalar) -> Result<f64> {
    match value {
        Scalar::Number(v) => Ok(v),
        Scalar::Text(s) => {
            let e: Expression = s
                .parse()
                .map_err(|err| SolverError::Config(format!("field `{field}`: {err}")))?;
            if !e.is_constant() {
                return Err(SolverError::Config(format!(
                    "field `{field}`: angle must not depend on x"
                )));
            }
            e.eval(0.0)
                .map_err(|err| SolverError::Config(format!("field `{field}`: {err}")))
        }
    }
}

fn potential(field: &str, value: Scalar) -> Result<Expression> {
    match value {
        Scalar::Number(v) => Ok(Expression::constant(v)),
        Scalar::Text(s) => s
            .parse()
            .map_err(|err| SolverError::Config(format!("field `{field}`: {err}"))),
    }
}

/// Parses a problem description without validating it.
pub fn parse_problem(text: &str) -> Result<TwoIntervalProblem> {
    let file: ProblemFile =
        toml::from_str(text).map_err(|e| SolverError::Config(e.to_string().trim_end().to_string()))?;
    let problem = TwoIntervalProblem::new(
        file.p1,
        file.p2,
        angle("alpha", file.alpha)?,
        angle("beta", file.beta)?,
        potential("q_left", file.q_left)?,
        potential("q_right", file.q_right)?,
        TransmissionMatrix::new(file.t_matrix),
    );
    Ok(problem.with_grid_steps(file.grid_steps.unwrap_or(DEFAULT_GRID_STEPS)))
}

/// Reads, parses and validates a problem file.
pub fn load_problem(path: impl AsRef<Path>) -> Result<TwoIntervalProblem> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| SolverError::Config(format!("{}: {e}", path.display())))?;
    let problem = parse_problem(&text).map_err(|e| match e {
        SolverError::Config(msg) => SolverError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })?;
    problem.ensure_valid()?;
    Ok(problem)
}

/// TOML text for a problem; the inverse of [`parse_problem`] up to float
/// formatting.
pub fn to_toml(problem: &TwoIntervalProblem) -> String {
    let t = problem.transmission().entries();
    let row = |r: &[f64; 4]| {
        r.iter()
            .map(|v| format!("{v:?}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "p1 = {:?}\np2 = {:?}\nalpha = {:?}\nbeta = {:?}\nq_left = {:?}\nq_right = {:?}\nt_matrix = [[{}], [{}]]\ngrid_steps = {}\n",
        problem.p1(),
        problem.p2(),
        problem.alpha(),
        problem.beta(),
        problem.q_left().source(),
        problem.q_right().source(),
        row(&t[0]),
        row(&t[1]),
        problem.grid_steps(),
    )
}
