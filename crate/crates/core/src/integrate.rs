//! Classical RK4 for `y'' = (q(x) - λ) y / p` on one subinterval.

use crate::error::{Result, SolverError};
use crate::model::{Samples, Side, TwoIntervalProblem};

const DIVERGENCE_LIMIT: f64 = 1e300;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// From the left end of the subinterval to its right end.
    Forward,
    /// From the right end back to the left end.
    Backward,
}

/// Solution on one subinterval. Samples are stored in ascending `x`
/// regardless of the direction of integration.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfTrace {
    pub side: Side,
    pub direction: Direction,
    pub lambda: f64,
    /// `(x, y, y')` the integration started from.
    pub initial: (f64, f64, f64),
    pub samples: Samples,
}

impl HalfTrace {
    pub fn len(&self) -> usize {
        self.samples.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.y.is_empty()
    }
}

pub fn integrate_subinterval(
    problem: &TwoIntervalProblem,
    side: Side,
    lambda: f64,
    y0: f64,
    dy0: f64,
    direction: Direction,
) -> Result<HalfTrace> {
    problem.ensure_valid()?;
    let samples = integrate_samples(problem, side, lambda, y0, dy0, direction)?;
    let x0 = match direction {
        Direction::Forward => side.start(),
        Direction::Backward => side.start() + std::f64::consts::PI,
    };
    Ok(HalfTrace {
        side,
        direction,
        lambda,
        initial: (x0, y0, dy0),
        samples,
    })
}

/// Unchecked core used by the shooting code; the problem must be valid.
pub(crate) fn integrate_samples(
    problem: &TwoIntervalProblem,
    side: Side,
    lambda: f64,
    y0: f64,
    dy0: f64,
    direction: Direction,
) -> Result<Samples> {
    let n = problem.grid_steps();
    let q = problem.potential_half_steps(side)?;
    let lambda = lambda + problem.potential_shift();
    let inv_p = 1.0 / problem.p(side);
    let c = |k: usize| (q[k] - lambda) * inv_p;

    let mut out = Samples::zeros(n + 1);
    let h_abs = problem.step();
    let (first, h) = match direction {
        Direction::Forward => (0, h_abs),
        Direction::Backward => (n, -h_abs),
    };
    out.y[first] = y0;
    out.dy[first] = dy0;
    let (mut y, mut z) = (y0, dy0);
    let half = 0.5 * h;

    for step in 0..n {
        let (from, to) = match direction {
            Direction::Forward => (step, step + 1),
            Direction::Backward => (n - step, n - step - 1),
        };
        let c0 = c(2 * from);
        let cm = c(from + to);
        let c1 = c(2 * to);

        let k1y = z;
        let k1z = c0 * y;
        let k2y = z + half * k1z;
        let k2z = cm * (y + half * k1y);
        let k3y = z + half * k2z;
        let k3z = cm * (y + half * k2y);
        let k4y = z + h * k3z;
        let k4z = c1 * (y + h * k3y);

        y += h / 6.0 * (k1y + 2.0 * (k2y + k3y) + k4y);
        z += h / 6.0 * (k1z + 2.0 * (k2z + k3z) + k4z);

        if !(y.abs() <= DIVERGENCE_LIMIT && z.abs() <= DIVERGENCE_LIMIT) {
            return Err(SolverError::Divergence {
                side,
                node: to,
                lambda: lambda - problem.potential_shift(),
            });
        }
        out.y[to] = y;
        out.dy[to] = z;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::f64::consts::PI;

    #[test]
    fn sine_on_left_subinterval() {
        let p = fixtures::c0();
        let t = integrate_subinterval(&p, Side::Left, 1.0, 0.0, 1.0, Direction::Forward).unwrap();
        let mid = p.grid_steps() / 2;
        assert!((p.node_x(Side::Left, mid) + PI / 2.0).abs() < 1e-15);
        assert!((t.samples.y[mid] - 1.0).abs() < 1e-8);
        assert_eq!(t.initial, (-PI, 0.0, 1.0));
    }

    #[test]
    fn linear_solution_is_exact() {
        let p = fixtures::c0();
        let t = integrate_subinterval(&p, Side::Left, 0.0, 0.0, 1.0, Direction::Forward).unwrap();
        for (i, y) in t.samples.y.iter().enumerate() {
            let exact = p.node_x(Side::Left, i) + PI;
            assert!((y - exact).abs() < 1e-12, "node {i}");
        }
        assert!(t.samples.dy.iter().all(|d| (d - 1.0).abs() < 1e-14));
    }

    #[test]
    fn backward_on_right_subinterval() {
        let p = fixtures::c0();
        let t =
            integrate_subinterval(&p, Side::Right, 4.0, 0.0, 1.0, Direction::Backward).unwrap();
        // y = sin(2(x - π)) / 2
        assert!(t.samples.y[0].abs() < 1e-8);
        assert_eq!(t.samples.y[p.grid_steps()], 0.0);
        let mid = p.grid_steps() / 4;
        let x = p.node_x(Side::Right, mid);
        assert!((t.samples.y[mid] - (2.0 * (x - PI)).sin() / 2.0).abs() < 1e-8);
    }

    #[test]
    fn divergence_is_reported() {
        let p = fixtures::c0().with_grid_steps(64);
        let err = integrate_subinterval(&p, Side::Left, -1e6, 0.0, 1.0, Direction::Forward)
            .unwrap_err();
        assert!(matches!(err, SolverError::Divergence { side: Side::Left, .. }));
    }

    #[test]
    fn invalid_problem_rejected() {
        let p = fixtures::c0().with_grid_steps(3);
        assert!(integrate_subinterval(&p, Side::Left, 1.0, 0.0, 1.0, Direction::Forward).is_err());
    }

    #[test]
    fn linearity() {
        let p = fixtures::c2();
        let base = integrate_subinterval(&p, Side::Right, 3.7, 0.3, -1.1, Direction::Forward)
            .unwrap();
        let a = -2.75;
        let scaled =
            integrate_subinterval(&p, Side::Right, 3.7, a * 0.3, a * -1.1, Direction::Forward)
                .unwrap();
        for (u, v) in base.samples.y.iter().zip(&scaled.samples.y) {
            assert!((a * u - v).abs() <= 1e-12 * v.abs().max(1e-300) + 1e-15);
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let max_err = |steps: usize| {
            let p = fixtures::c0().with_grid_steps(steps);
            let s: f64 = 3.0;
            let t = integrate_subinterval(&p, Side::Left, s * s, 0.0, 1.0, Direction::Forward)
                .unwrap();
            t.samples
                .y
                .iter()
                .enumerate()
                .map(|(i, y)| (y - (s * (p.node_x(Side::Left, i) + PI)).sin() / s).abs())
                .fold(0.0, f64::max)
        };
        let ratio = max_err(64) / max_err(128);
        assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn reversible() {
        let p = fixtures::c0();
        for lambda in [-3.0, 0.0, 1.0, 9.5, 25.0] {
            let fwd = integrate_subinterval(&p, Side::Left, lambda, 0.4, -0.9, Direction::Forward)
                .unwrap();
            let n = p.grid_steps();
            let back = integrate_subinterval(
                &p,
                Side::Left,
                lambda,
                fwd.samples.y[n],
                fwd.samples.dy[n],
                Direction::Backward,
            )
            .unwrap();
            assert!((back.samples.y[0] - 0.4).abs() <= 1e-8 * 0.9);
            assert!((back.samples.dy[0] + 0.9).abs() <= 1e-8 * 0.9);
        }
    }
}
