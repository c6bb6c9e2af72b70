//! The boundary-value-transmission problem and sampled solutions on it.
//!
//! The equation `-p y'' + q y = λ y` holds on `[-π, 0)` and `(0, π]` with
//! piecewise constant `p`, separated boundary conditions at `±π` and two
//! transmission conditions coupling the one-sided values at `0`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Result, SolverError};
use crate::expr::{EvalError, Expression};
use crate::quadrature::simpson_product;

pub const DEFAULT_GRID_STEPS: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];

    /// Left end of the subinterval.
    pub fn start(self) -> f64 {
        match self {
            Side::Left => -PI,
            Side::Right => 0.0,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A location in `[-π, 0) ∪ (0, π]`, with the interface split into `0-` and `0+`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    side: Side,
    x: f64,
}

impl Point {
    /// Nonzero coordinate; the side follows from the sign.
    pub fn new(x: f64) -> Result<Point> {
        if x == 0.0 {
            return Err(SolverError::InterfaceNeedsSide);
        }
        if x < 0.0 {
            Point::left(x)
        } else {
            Point::right(x)
        }
    }

    pub fn left(x: f64) -> Result<Point> {
        if !(-PI..=0.0).contains(&x) {
            return Err(SolverError::PointOutOfRange { x });
        }
        Ok(Point { side: Side::Left, x })
    }

    pub fn right(x: f64) -> Result<Point> {
        if !(0.0..=PI).contains(&x) {
            return Err(SolverError::PointOutOfRange { x });
        }
        Ok(Point {
            side: Side::Right,
            x,
        })
    }

    pub fn interface(side: Side) -> Point {
        Point { side, x: 0.0 }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// Position along the line with `0-` ordered before `0+`.
    pub fn precedes(&self, other: &Point) -> bool {
        (self.side, self.x) <= (other.side, other.x)
    }

    /// Points `samples` apart on each subinterval, both endpoints included.
    pub fn uniform(samples: usize) -> Vec<Point> {
        let m = samples.max(2) - 1;
        let mut out = Vec::with_capacity(2 * (m + 1));
        for side in Side::BOTH {
            for i in 0..=m {
                let x = if i == m {
                    side.start() + PI
                } else {
                    side.start() + PI * i as f64 / m as f64
                };
                out.push(Point { side, x });
            }
        }
        out
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x == 0.0 {
            match self.side {
                Side::Left => f.write_str("0-"),
                Side::Right => f.write_str("0+"),
            }
        } else {
            write!(f, "{}", self.x)
        }
    }
}

/// Coefficients of the two transmission conditions.
///
/// Row `i` holds `(β⁺ᵢ₀, β⁺ᵢ₁, β⁻ᵢ₀, β⁻ᵢ₁)`: the multipliers of `y(0+)`,
/// `y'(0+)`, `y(0-)`, `y'(0-)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionMatrix {
    entries: [[f64; 4]; 2],
    minors: [[f64; 4]; 4],
}

impl TransmissionMatrix {
    pub fn new(entries: [[f64; 4]; 2]) -> TransmissionMatrix {
        let mut minors = [[0.0; 4]; 4];
        for (i, row) in minors.iter_mut().enumerate() {
            for (j, m) in row.iter_mut().enumerate() {
                *m = entries[0][i] * entries[1][j] - entries[0][j] * entries[1][i];
            }
        }
        TransmissionMatrix { entries, minors }
    }

    /// `y(0+) = y(0-)`, `y'(0+) = y'(0-)`.
    pub fn continuity() -> TransmissionMatrix {
        TransmissionMatrix::new([[1.0, 0.0, -1.0, 0.0], [0.0, 1.0, 0.0, -1.0]])
    }

    pub fn entries(&self) -> &[[f64; 4]; 2] {
        &self.entries
    }

    /// Determinant of columns `i` and `j` (1-based, `i < j`).
    pub fn minor(&self, i: usize, j: usize) -> Result<f64> {
        if !(1 <= i && i < j && j <= 4) {
            return Err(SolverError::IndexOutOfRange(format!(
                "minor ({i},{j}) needs 1 <= i < j <= 4"
            )));
        }
        Ok(self.minors[i - 1][j - 1])
    }

    pub(crate) fn d(&self, i: usize, j: usize) -> f64 {
        self.minors[i - 1][j - 1]
    }

    /// Residuals of both transmission conditions for the given one-sided data.
    pub fn residuals(&self, left: (f64, f64), right: (f64, f64)) -> [f64; 2] {
        let [a, b] = self.entries;
        let row = |r: [f64; 4]| r[0] * right.0 + r[1] * right.1 + r[2] * left.0 + r[3] * left.1;
        [row(a), row(b)]
    }
}

/// A failed standing assumption of the problem.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    P1NotPositive(f64),
    P2NotPositive(f64),
    Delta12Zero,
    Delta34Zero,
    LeftWeightNotPositive(f64),
    RightWeightNotPositive(f64),
    NonFinite(&'static str),
    GridSteps(usize),
    Potential { side: Side, error: EvalError },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::P1NotPositive(v) => write!(f, "p1 not positive ({v})"),
            Violation::P2NotPositive(v) => write!(f, "p2 not positive ({v})"),
            Violation::Delta12Zero => f.write_str("Δ12 = 0"),
            Violation::Delta34Zero => f.write_str("Δ34 = 0"),
            Violation::LeftWeightNotPositive(v) => {
                write!(f, "left weight Δ34/p1 = {v} is not positive")
            }
            Violation::RightWeightNotPositive(v) => {
                write!(f, "right weight Δ12/p2 = {v} is not positive")
            }
            Violation::NonFinite(name) => write!(f, "{name} is not finite"),
            Violation::GridSteps(n) => {
                write!(f, "grid_steps = {n} must be even and at least 4")
            }
            Violation::Potential { side, error } => {
                write!(f, "potential on the {side} subinterval: {error}")
            }
        }
    }
}

/// Potential sampled at every half step of each subinterval.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct PotentialTable {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct TwoIntervalProblem {
    p1: f64,
    p2: f64,
    alpha: f64,
    beta: f64,
    q_left: Expression,
    q_right: Expression,
    transmission: TransmissionMatrix,
    grid_steps: usize,
    potential_shift: f64,
    potential: Arc<std::result::Result<PotentialTable, Violation>>,
}

impl TwoIntervalProblem {
    pub fn new(
        p1: f64,
        p2: f64,
        alpha: f64,
        beta: f64,
        q_left: Expression,
        q_right: Expression,
        transmission: TransmissionMatrix,
    ) -> TwoIntervalProblem {
        let mut problem = TwoIntervalProblem {
            p1,
            p2,
            alpha,
            beta,
            q_left,
            q_right,
            transmission,
            grid_steps: DEFAULT_GRID_STEPS,
            potential_shift: 0.0,
            potential: Arc::new(Err(Violation::GridSteps(0))),
        };
        problem.tabulate_potential();
        problem
    }

    pub fn with_grid_steps(mut self, steps: usize) -> TwoIntervalProblem {
        self.grid_steps = steps;
        self.tabulate_potential();
        self
    }

    /// The same problem with `q` replaced by `q - shift`; all eigenvalues
    /// move by `-shift` and eigenfunctions are unchanged.
    pub fn with_potential_shift(mut self, shift: f64) -> TwoIntervalProblem {
        self.potential_shift += shift;
        self
    }

    fn tabulate_potential(&mut self) {
        let n = self.grid_steps;
        if n == 0 {
            self.potential = Arc::new(Err(Violation::GridSteps(n)));
            return;
        }
        let sample = |side: Side, expr: &Expression| {
            let h = PI / (2 * n) as f64;
            (0..=2 * n)
                .map(|k| {
                    let x = half_node_x(side, k, 2 * n, h);
                    eval_one_sided(expr, side, x)
                })
                .collect::<std::result::Result<Vec<f64>, EvalError>>()
                .map_err(|error| Violation::Potential { side, error })
        };
        let table = sample(Side::Left, &self.q_left)
            .and_then(|left| Ok(PotentialTable {
                left,
                right: sample(Side::Right, &self.q_right)?,
            }));
        self.potential = Arc::new(table);
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn p(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.p1,
            Side::Right => self.p2,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn q_left(&self) -> &Expression {
        &self.q_left
    }

    pub fn q_right(&self) -> &Expression {
        &self.q_right
    }

    pub fn transmission(&self) -> &TransmissionMatrix {
        &self.transmission
    }

    pub fn grid_steps(&self) -> usize {
        self.grid_steps
    }

    pub fn potential_shift(&self) -> f64 {
        self.potential_shift
    }

    pub fn step(&self) -> f64 {
        PI / self.grid_steps as f64
    }

    /// `(Δ34 / p1, Δ12 / p2)`.
    pub fn weights(&self) -> (f64, f64) {
        (
            self.transmission.d(3, 4) / self.p1,
            self.transmission.d(1, 2) / self.p2,
        )
    }

    pub fn weight(&self, side: Side) -> f64 {
        let (l, r) = self.weights();
        match side {
            Side::Left => l,
            Side::Right => r,
        }
    }

    /// Empty iff every standing assumption holds.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (name, v) in [
            ("p1", self.p1),
            ("p2", self.p2),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("potential shift", self.potential_shift),
        ] {
            if !v.is_finite() {
                out.push(Violation::NonFinite(name));
            }
        }
        if self.transmission.entries.iter().flatten().any(|v| !v.is_finite()) {
            out.push(Violation::NonFinite("t_matrix"));
        }
        if self.p1 <= 0.0 {
            out.push(Violation::P1NotPositive(self.p1));
        }
        if self.p2 <= 0.0 {
            out.push(Violation::P2NotPositive(self.p2));
        }
        let d12 = self.transmission.d(1, 2);
        let d34 = self.transmission.d(3, 4);
        if d12 == 0.0 {
            out.push(Violation::Delta12Zero);
        }
        if d34 == 0.0 {
            out.push(Violation::Delta34Zero);
        }
        let (wl, wr) = self.weights();
        if d34 != 0.0 && self.p1 > 0.0 && wl <= 0.0 {
            out.push(Violation::LeftWeightNotPositive(wl));
        }
        if d12 != 0.0 && self.p2 > 0.0 && wr <= 0.0 {
            out.push(Violation::RightWeightNotPositive(wr));
        }
        if self.grid_steps < 4 || !self.grid_steps.is_multiple_of(2) {
            out.push(Violation::GridSteps(self.grid_steps));
        }
        if let Err(v) = self.potential.as_ref() {
            if !matches!(v, Violation::GridSteps(_)) {
                out.push(v.clone());
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(SolverError::InvalidProblem(violations))
        }
    }

    /// Unshifted potential at every half step of `side`; `2 N + 1` values.
    pub(crate) fn potential_half_steps(&self, side: Side) -> Result<&[f64]> {
        match self.potential.as_ref() {
            Ok(t) => Ok(match side {
                Side::Left => &t.left,
                Side::Right => &t.right,
            }),
            Err(v) => Err(SolverError::InvalidProblem(vec![v.clone()])),
        }
    }

    /// Effective potential `q - shift` at grid node `i` of `side`.
    pub fn q_at_node(&self, side: Side, i: usize) -> Result<f64> {
        let table = self.potential_half_steps(side)?;
        table
            .get(2 * i)
            .map(|q| q - self.potential_shift)
            .ok_or_else(|| SolverError::IndexOutOfRange(format!("node {i} on {side}")))
    }

    /// `max |q - shift|` over both grids.
    pub fn max_abs_potential(&self) -> Result<f64> {
        let mut m: f64 = 0.0;
        for side in Side::BOTH {
            for q in self.potential_half_steps(side)? {
                m = m.max((q - self.potential_shift).abs());
            }
        }
        Ok(m)
    }

    pub fn node_x(&self, side: Side, i: usize) -> f64 {
        node_x(side, i, self.grid_steps)
    }

    pub(crate) fn check_trace(&self, trace: &FullTrace) -> Result<()> {
        if trace.steps() != self.grid_steps {
            return Err(SolverError::GridMismatch {
                expected: self.grid_steps,
                found: trace.steps(),
            });
        }
        Ok(())
    }

    /// Scale used to decide whether the characteristic function vanishes.
    pub fn omega_scale(&self) -> f64 {
        1.0_f64
            .max(self.transmission.d(1, 2).abs())
            .max(self.transmission.d(3, 4).abs())
    }
}

/// Coordinate of node `i` of `steps` uniform steps on `side`; endpoints exact.
pub fn node_x(side: Side, i: usize, steps: usize) -> f64 {
    if i == steps {
        side.start() + PI
    } else if i == 0 {
        side.start()
    } else {
        side.start() + i as f64 * (PI / steps as f64)
    }
}

fn half_node_x(side: Side, k: usize, halves: usize, h: f64) -> f64 {
    if k == halves {
        side.start() + PI
    } else {
        side.start() + k as f64 * h
    }
}

/// Evaluates `expr` at `x`, taking the one-sided limit at the interface
/// when the value at exactly `0` is undefined.
pub(crate) fn eval_one_sided(expr: &Expression, side: Side, x: f64) -> std::result::Result<f64, EvalError> {
    match expr.eval(x) {
        Ok(v) => Ok(v),
        Err(e) if x == 0.0 => {
            let nudged = match side {
                Side::Left => -f64::MIN_POSITIVE,
                Side::Right => f64::MIN_POSITIVE,
            };
            expr.eval(nudged).map_err(|_| e)
        }
        Err(e) => Err(e),
    }
}

/// Values and derivatives at the nodes of one subinterval.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Samples {
    pub y: Vec<f64>,
    pub dy: Vec<f64>,
}

impl Samples {
    pub fn zeros(len: usize) -> Samples {
        Samples {
            y: vec![0.0; len],
            dy: vec![0.0; len],
        }
    }
}

/// A function sampled with its derivative on both subintervals.
///
/// The last left node is `0-` and the first right node is `0+`, so the
/// one-sided limits at the interface are stored as ordinary samples.
#[derive(Debug, Clone, PartialEq)]
pub struct FullTrace {
    steps: usize,
    left: Samples,
    right: Samples,
}

impl FullTrace {
    pub fn new(steps: usize, left: Samples, right: Samples) -> Result<FullTrace> {
        for s in [&left, &right] {
            if s.y.len() != steps + 1 || s.dy.len() != steps + 1 {
                return Err(SolverError::GridMismatch {
                    expected: steps,
                    found: s.y.len().saturating_sub(1),
                });
            }
        }
        Ok(FullTrace { steps, left, right })
    }

    pub fn zeros(steps: usize) -> FullTrace {
        FullTrace {
            steps,
            left: Samples::zeros(steps + 1),
            right: Samples::zeros(steps + 1),
        }
    }

    /// Samples `f` at every node; derivatives come from fourth-order
    /// finite differences within each subinterval.
    pub fn from_fn<F>(steps: usize, mut f: F) -> Result<FullTrace>
    where
        F: FnMut(Side, f64) -> Result<f64>,
    {
        if steps < 4 {
            return Err(SolverError::InvalidArgument(format!(
                "at least 4 steps per subinterval are needed, got {steps}"
            )));
        }
        let h = PI / steps as f64;
        let mut sides = Vec::with_capacity(2);
        for side in Side::BOTH {
            let y = (0..=steps)
                .map(|i| f(side, node_x(side, i, steps)))
                .collect::<Result<Vec<f64>>>()?;
            let dy = finite_difference(&y, h);
            sides.push(Samples { y, dy });
        }
        let right = sides.pop().unwrap_or_default();
        let left = sides.pop().unwrap_or_default();
        FullTrace::new(steps, left, right)
    }

    /// Samples an expression, taking one-sided limits at the interface.
    pub fn from_expression(steps: usize, expr: &Expression) -> Result<FullTrace> {
        FullTrace::from_fn(steps, |side, x| Ok(eval_one_sided(expr, side, x)?))
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn step(&self) -> f64 {
        PI / self.steps as f64
    }

    pub fn side(&self, side: Side) -> &Samples {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn side_mut(&mut self, side: Side) -> &mut Samples {
        match side {
            Side::Left => &mut self.left,
            Side::Right => &mut self.right,
        }
    }

    pub fn left(&self) -> &Samples {
        &self.left
    }

    pub fn right(&self) -> &Samples {
        &self.right
    }

    /// `(y(0-), y'(0-))`.
    pub fn at_interface_left(&self) -> (f64, f64) {
        (self.left.y[self.steps], self.left.dy[self.steps])
    }

    /// `(y(0+), y'(0+))`.
    pub fn at_interface_right(&self) -> (f64, f64) {
        (self.right.y[0], self.right.dy[0])
    }

    pub fn node_x(&self, side: Side, i: usize) -> f64 {
        node_x(side, i, self.steps)
    }

    /// `(y, y')` at an arbitrary point by cubic Hermite interpolation on the
    /// containing cell.
    pub fn eval(&self, point: Point) -> (f64, f64) {
        let samples = self.side(point.side());
        let h = self.step();
        let t = (point.x() - point.side().start()) / h;
        let cell = (t.floor().max(0.0) as usize).min(self.steps - 1);
        let s = t - cell as f64;
        if s == 0.0 {
            return (samples.y[cell], samples.dy[cell]);
        }
        if s == 1.0 {
            return (samples.y[cell + 1], samples.dy[cell + 1]);
        }
        let (y0, y1) = (samples.y[cell], samples.y[cell + 1]);
        let (d0, d1) = (samples.dy[cell], samples.dy[cell + 1]);
        let s2 = s * s;
        let s3 = s2 * s;
        let value = (2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * h * d0
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * h * d1;
        let slope = (6.0 * s2 - 6.0 * s) * (y0 - y1) / h
            + (3.0 * s2 - 4.0 * s + 1.0) * d0
            + (3.0 * s2 - 2.0 * s) * d1;
        (value, slope)
    }

    pub fn scale(&mut self, factor: f64) {
        for side in Side::BOTH {
            let s = self.side_mut(side);
            s.y.iter_mut().for_each(|v| *v *= factor);
            s.dy.iter_mut().for_each(|v| *v *= factor);
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: f64, other: &FullTrace) -> Result<()> {
        if other.steps != self.steps {
            return Err(SolverError::GridMismatch {
                expected: self.steps,
                found: other.steps,
            });
        }
        for side in Side::BOTH {
            let src = other.side(side);
            let dst = self.side_mut(side);
            for (d, s) in dst.y.iter_mut().zip(&src.y) {
                *d += factor * s;
            }
            for (d, s) in dst.dy.iter_mut().zip(&src.dy) {
                *d += factor * s;
            }
        }
        Ok(())
    }

    /// Largest `|y|` over both subintervals.
    pub fn max_abs(&self) -> f64 {
        self.left
            .y
            .iter()
            .chain(&self.right.y)
            .fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest `|y - other.y|`.
    pub fn max_abs_diff(&self, other: &FullTrace) -> Result<f64> {
        if other.steps != self.steps {
            return Err(SolverError::GridMismatch {
                expected: self.steps,
                found: other.steps,
            });
        }
        let mut m: f64 = 0.0;
        for side in Side::BOTH {
            for (a, b) in self.side(side).y.iter().zip(&other.side(side).y) {
                m = m.max((a - b).abs());
            }
        }
        Ok(m)
    }

    pub fn is_finite(&self) -> bool {
        Side::BOTH.iter().all(|&s| {
            let s = self.side(s);
            s.y.iter().chain(&s.dy).all(|v| v.is_finite())
        })
    }
}

/// Fourth-order finite-difference derivative of uniform samples.
fn finite_difference(y: &[f64], h: f64) -> Vec<f64> {
    let n = y.len() - 1;
    let c = 1.0 / (12.0 * h);
    let mut d = vec![0.0; n + 1];
    for i in 2..=n - 2 {
        d[i] = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) * c;
    }
    d[0] = (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) * c;
    d[1] = (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) * c;
    d[n] = (25.0 * y[n] - 48.0 * y[n - 1] + 36.0 * y[n - 2] - 16.0 * y[n - 3] + 3.0 * y[n - 4]) * c;
    d[n - 1] = (3.0 * y[n] + 10.0 * y[n - 1] - 18.0 * y[n - 2] + 6.0 * y[n - 3] - y[n - 4]) * c;
    d
}

/// Weighted inner product `(Δ34/p1) ∫_{-π}^0 f g + (Δ12/p2) ∫_0^π f g`.
pub fn inner_product(problem: &TwoIntervalProblem, f: &FullTrace, g: &FullTrace) -> Result<f64> {
    problem.check_trace(f)?;
    problem.check_trace(g)?;
    let h = problem.step();
    let (wl, wr) = problem.weights();
    Ok(wl * simpson_product(&f.left.y, &g.left.y, h)
        + wr * simpson_product(&f.right.y, &g.right.y, h))
}

/// Largest `|-p y'' + (q - λ) y - f|` over interior nodes, with `y''` from
/// the five-point central difference. `rhs = None` means `f = 0`.
pub fn ode_residual(
    problem: &TwoIntervalProblem,
    trace: &FullTrace,
    lambda: f64,
    rhs: Option<&FullTrace>,
) -> Result<f64> {
    problem.check_trace(trace)?;
    if let Some(f) = rhs {
        problem.check_trace(f)?;
    }
    let n = trace.steps();
    let h = trace.step();
    let c = 1.0 / (12.0 * h * h);
    let mut worst: f64 = 0.0;
    for side in Side::BOTH {
        let y = &trace.side(side).y;
        let p = problem.p(side);
        for i in 2..=n - 2 {
            let d2 = (-y[i - 2] + 16.0 * y[i - 1] - 30.0 * y[i] + 16.0 * y[i + 1] - y[i + 2]) * c;
            let q = problem.q_at_node(side, i)?;
            let f = rhs.map_or(0.0, |f| f.side(side).y[i]);
            worst = worst.max((-p * d2 + (q - lambda) * y[i] - f).abs());
        }
    }
    Ok(worst)
}
