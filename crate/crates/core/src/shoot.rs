//! Glued fundamental solutions and the characteristic function.
//!
//! `φ` is launched from `-π` with data satisfying the left boundary
//! condition and carried across the interface by the transmission map;
//! `χ` is launched backwards from `π` and carried across in the other
//! direction. Both therefore satisfy the transmission conditions and one
//! boundary condition each, and `λ` is an eigenvalue exactly when they are
//! linearly dependent.

use serde::Serialize;

use crate::error::{Result, SolverError};
use crate::integrate::{integrate_samples, Direction};
use crate::model::{FullTrace, Side, TwoIntervalProblem};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CharacteristicValue {
    pub lambda: f64,
    /// Wronskian of `φ`, `χ` on the left subinterval.
    pub omega1: f64,
    /// Wronskian on the right subinterval.
    pub omega2: f64,
    /// `Δ34 · omega1`; vanishes exactly at eigenvalues.
    pub omega: f64,
    /// `|Δ34 ω1 - Δ12 ω2| / max(1, |Δ34 ω1|)`.
    pub consistency_residual: f64,
}

/// `φ` and `χ` at one `λ` together with their characteristic value.
#[derive(Debug, Clone)]
pub struct Shooting {
    pub phi: FullTrace,
    pub chi: FullTrace,
    pub value: CharacteristicValue,
}

/// `φ(·, λ)`: satisfies the left boundary condition and both transmission
/// conditions.
pub fn left_solution(problem: &TwoIntervalProblem, lambda: f64) -> Result<FullTrace> {
    problem.ensure_valid()?;
    phi_unchecked(problem, lambda)
}

/// `χ(·, λ)`: satisfies the right boundary condition and both transmission
/// conditions.
pub fn right_solution(problem: &TwoIntervalProblem, lambda: f64) -> Result<FullTrace> {
    problem.ensure_valid()?;
    chi_unchecked(problem, lambda)
}

pub(crate) fn phi_unchecked(problem: &TwoIntervalProblem, lambda: f64) -> Result<FullTrace> {
    let t = problem.transmission();
    let (sa, ca) = problem.alpha().sin_cos();
    let left = integrate_samples(problem, Side::Left, lambda, sa, -ca, Direction::Forward)?;
    let n = problem.grid_steps();
    let (a, b) = (left.y[n], left.dy[n]);
    let d12 = t.d(1, 2);
    let y0 = (t.d(2, 3) * a + t.d(2, 4) * b) / d12;
    let dy0 = -(t.d(1, 3) * a + t.d(1, 4) * b) / d12;
    let right = integrate_samples(problem, Side::Right, lambda, y0, dy0, Direction::Forward)?;
    FullTrace::new(n, left, right)
}

pub(crate) fn chi_unchecked(problem: &TwoIntervalProblem, lambda: f64) -> Result<FullTrace> {
    let t = problem.transmission();
    let (sb, cb) = problem.beta().sin_cos();
    let right = integrate_samples(problem, Side::Right, lambda, -sb, cb, Direction::Backward)?;
    let (c, d) = (right.y[0], right.dy[0]);
    let d34 = t.d(3, 4);
    let y0 = -(t.d(1, 4) * c + t.d(2, 4) * d) / d34;
    let dy0 = (t.d(1, 3) * c + t.d(2, 3) * d) / d34;
    let left = integrate_samples(problem, Side::Left, lambda, y0, dy0, Direction::Backward)?;
    FullTrace::new(problem.grid_steps(), left, right)
}

/// `φ χ' - φ' χ` at grid node `node` of `side`.
pub fn wronskian(phi: &FullTrace, chi: &FullTrace, side: Side, node: usize) -> Result<f64> {
    if phi.steps() != chi.steps() {
        return Err(SolverError::GridMismatch {
            expected: phi.steps(),
            found: chi.steps(),
        });
    }
    if node > phi.steps() {
        return Err(SolverError::IndexOutOfRange(format!(
            "node {node} outside the {side} subinterval of {} steps",
            phi.steps()
        )));
    }
    Ok(wronskian_at(phi, chi, side, node))
}

fn wronskian_at(phi: &FullTrace, chi: &FullTrace, side: Side, i: usize) -> f64 {
    let p = phi.side(side);
    let c = chi.side(side);
    p.y[i] * c.dy[i] - p.dy[i] * c.y[i]
}

/// Median of the Wronskian over every node of `side`.
fn median_wronskian(phi: &FullTrace, chi: &FullTrace, side: Side) -> f64 {
    let mut w: Vec<f64> = (0..=phi.steps())
        .map(|i| wronskian_at(phi, chi, side, i))
        .collect();
    let mid = w.len() / 2;
    let (_, m, _) = w.select_nth_unstable_by(mid, f64::total_cmp);
    *m
}

/// Builds `φ`, `χ` once and evaluates both Wronskians.
pub fn shoot(problem: &TwoIntervalProblem, lambda: f64) -> Result<Shooting> {
    problem.ensure_valid()?;
    shoot_unchecked(problem, lambda)
}

pub(crate) fn shoot_unchecked(problem: &TwoIntervalProblem, lambda: f64) -> Result<Shooting> {
    let phi = phi_unchecked(problem, lambda)?;
    let chi = chi_unchecked(problem, lambda)?;
    let omega1 = median_wronskian(&phi, &chi, Side::Left);
    let omega2 = median_wronskian(&phi, &chi, Side::Right);
    let t = problem.transmission();
    let omega = t.d(3, 4) * omega1;
    let consistency_residual = (omega - t.d(1, 2) * omega2).abs() / omega.abs().max(1.0);
    Ok(Shooting {
        phi,
        chi,
        value: CharacteristicValue {
            lambda,
            omega1,
            omega2,
            omega,
            consistency_residual,
        },
    })
}

pub fn characteristic(problem: &TwoIntervalProblem, lambda: f64) -> Result<CharacteristicValue> {
    Ok(shoot(problem, lambda)?.value)
}

pub(crate) fn omega_unchecked(problem: &TwoIntervalProblem, lambda: f64) -> Result<f64> {
    Ok(shoot_unchecked(problem, lambda)?.value.omega)
}

/// Residuals of the left and right boundary conditions for a trace.
pub fn boundary_residuals(problem: &TwoIntervalProblem, trace: &FullTrace) -> [f64; 2] {
    let n = trace.steps();
    let (sa, ca) = problem.alpha().sin_cos();
    let (sb, cb) = problem.beta().sin_cos();
    let l = trace.left();
    let r = trace.right();
    [ca * l.y[0] + sa * l.dy[0], cb * r.y[n] + sb * r.dy[n]]
}

/// Residuals of both transmission conditions for a trace.
pub fn transmission_residuals(problem: &TwoIntervalProblem, trace: &FullTrace) -> [f64; 2] {
    problem
        .transmission()
        .residuals(trace.at_interface_left(), trace.at_interface_right())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::TransmissionMatrix;
    use std::f64::consts::PI;

    #[test]
    fn phi_on_c0_at_one() {
        let p = fixtures::c0();
        let phi = left_solution(&p, 1.0).unwrap();
        for i in (0..=p.grid_steps()).step_by(97) {
            let x = p.node_x(Side::Left, i);
            assert!((phi.left().y[i] + (x + PI).sin()).abs() < 1e-8);
        }
        let (y, dy) = phi.at_interface_left();
        assert!(y.abs() < 1e-8);
        // continuity gluing is the identity map
        assert_eq!(phi.at_interface_right(), (y, dy));
    }

    #[test]
    fn phi_jump_on_c1() {
        let p = fixtures::c1();
        for lambda in [0.3, 1.7, 6.0] {
            let phi = left_solution(&p, lambda).unwrap();
            let (a, b) = phi.at_interface_left();
            let (c, d) = phi.at_interface_right();
            assert!((c - 2.0 * a).abs() <= 1e-15 * a.abs().max(1.0));
            assert_eq!(d, b);
        }
    }

    #[test]
    fn chi_on_c0() {
        let p = fixtures::c0();
        let chi = right_solution(&p, 1.0).unwrap();
        for i in (0..=p.grid_steps()).step_by(101) {
            let x = p.node_x(Side::Right, i);
            assert!((chi.right().y[i] - (x - PI).sin()).abs() < 1e-8);
        }
        assert!(chi.at_interface_right().0.abs() < 1e-8);
        assert_eq!(chi.at_interface_left(), chi.at_interface_right());

        let chi0 = right_solution(&p, 0.0).unwrap();
        assert!((chi0.left().y[0] + 2.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn wronskian_values_on_c0() {
        let p = fixtures::c0();
        let phi = left_solution(&p, 0.0).unwrap();
        let chi = right_solution(&p, 0.0).unwrap();
        let n = p.grid_steps();
        let w_left = wronskian(&phi, &chi, Side::Left, n / 2).unwrap();
        let w_right = wronskian(&phi, &chi, Side::Right, n / 2).unwrap();
        assert!((w_left + 2.0 * PI).abs() < 1e-9);
        assert!((w_right + 2.0 * PI).abs() < 1e-9);
        assert!(wronskian(&phi, &chi, Side::Left, n + 1).is_err());

        let phi = left_solution(&p, 4.0).unwrap();
        let chi = right_solution(&p, 4.0).unwrap();
        assert!(wronskian(&phi, &chi, Side::Left, 17).unwrap().abs() < 1e-7);
    }

    #[test]
    fn characteristic_values() {
        let c0 = fixtures::c0();
        let v = characteristic(&c0, 0.0).unwrap();
        assert!((v.omega + 2.0 * PI).abs() < 1e-6);
        let v = characteristic(&c0, 2.0).unwrap();
        let s = 2f64.sqrt();
        let exact = -(2.0 * PI * s).sin() / s;
        assert!((v.omega - exact).abs() < 1e-8);
        assert!((v.omega + 0.363).abs() < 2e-3);
        let v = characteristic(&fixtures::c1(), 0.0).unwrap();
        assert!((v.omega + 3.0 * PI).abs() < 1e-5);
    }

    #[test]
    fn c1_closed_form() {
        let p = fixtures::c1();
        for lambda in [0.1, 0.7, 2.0, 5.3, 11.0] {
            let s: f64 = f64::sqrt(lambda);
            let exact = -1.5 * (2.0 * PI * s).sin() / s;
            let v = characteristic(&p, lambda).unwrap();
            assert!((v.omega - exact).abs() < 1e-8, "{lambda}: {} vs {exact}", v.omega);
        }
        // negative λ: -(3/2) sinh(2πκ)/κ
        let k: f64 = 1.3;
        let v = characteristic(&p, -k * k).unwrap();
        let exact = -1.5 * (2.0 * PI * k).sinh() / k;
        assert!((v.omega - exact).abs() < 1e-8 * exact.abs());
    }

    #[test]
    fn constructed_traces_satisfy_their_conditions() {
        for p in [fixtures::c0(), fixtures::c1(), fixtures::c2(), fixtures::skewed()] {
            for lambda in [-2.0, 0.5, 7.3, 20.0] {
                let phi = left_solution(&p, lambda).unwrap();
                let chi = right_solution(&p, lambda).unwrap();
                let scale_phi = phi.max_abs().max(1.0);
                let scale_chi = chi.max_abs().max(1.0);
                assert!(boundary_residuals(&p, &phi)[0].abs() <= 1e-12);
                assert!(boundary_residuals(&p, &chi)[1].abs() <= 1e-12);
                for r in transmission_residuals(&p, &phi) {
                    assert!(r.abs() <= 1e-12 * scale_phi, "{r}");
                }
                for r in transmission_residuals(&p, &chi) {
                    assert!(r.abs() <= 1e-12 * scale_chi, "{r}");
                }
            }
        }
    }

    #[test]
    fn wronskian_identity_on_skewed_problem() {
        let p = fixtures::skewed();
        for lambda in [-4.0, -0.5, 0.0, 1.3, 8.8, 24.0] {
            let v = characteristic(&p, lambda).unwrap();
            assert!(v.consistency_residual <= 1e-8, "{lambda}: {v:?}");
        }
    }

    #[test]
    fn wronskian_is_x_independent() {
        let p = fixtures::c2();
        let sh = shoot(&p, 6.1).unwrap();
        for side in Side::BOTH {
            let reference = wronskian(&sh.phi, &sh.chi, side, 0).unwrap();
            for i in (0..=p.grid_steps()).step_by(37) {
                let w = wronskian(&sh.phi, &sh.chi, side, i).unwrap();
                assert!((w - reference).abs() <= 1e-7 * reference.abs().max(1.0));
            }
        }
    }

    #[test]
    fn degenerate_matrix_rejected() {
        let t = TransmissionMatrix::new([[1.0, 0.0, 0.0, 0.0], [1.0, 0.0, 0.0, 1.0]]);
        let p = crate::model::TwoIntervalProblem::new(
            1.0,
            1.0,
            0.0,
            0.0,
            crate::expr::Expression::constant(0.0),
            crate::expr::Expression::constant(0.0),
            t,
        );
        assert!(matches!(
            left_solution(&p, 1.0),
            Err(SolverError::InvalidProblem(_))
        ));
    }
}
