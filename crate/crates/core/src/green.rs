//! Green kernel `G(x, ξ; λ) = φ(min) χ(max) / Ω(λ)`, the resolvent applied by
//! quadrature, and the eigenfunction series for both.

use crate::error::{Result, SolverError};
use crate::expansion::{self, Integrand};
use crate::model::{FullTrace, Point, Samples, Side, TwoIntervalProblem};
use crate::options::SolverOptions;
use crate::quadrature::cumulative_integral;
use crate::shoot::shoot_unchecked;
use crate::spectrum::Spectrum;
use serde::Serialize;

/// Which argument took the `φ` factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `x` precedes `ξ`: `φ(x) χ(ξ)`.
    XFirst,
    /// `ξ` precedes `x`: `φ(ξ) χ(x)`.
    XiFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelEvaluation {
    pub x: f64,
    pub xi: f64,
    pub lambda: f64,
    pub value: f64,
    pub branch: Branch,
}

/// `φ`, `χ` and `Ω` at a fixed `λ`, reusable for many kernel evaluations.
#[derive(Debug, Clone)]
pub struct GreenKernel {
    lambda: f64,
    omega: f64,
    phi: FullTrace,
    chi: FullTrace,
}

impl GreenKernel {
    /// Fails with `NearSpectrum` when `|Ω(λ)| ≤ 1e-8 · scale`.
    pub fn new(problem: &TwoIntervalProblem, lambda: f64) -> Result<GreenKernel> {
        GreenKernel::with_tolerance(problem, lambda, SolverOptions::default().omega_zero_tol)
    }

    pub fn with_tolerance(
        problem: &TwoIntervalProblem,
        lambda: f64,
        omega_zero_tol: f64,
    ) -> Result<GreenKernel> {
        problem.ensure_valid()?;
        let shooting = shoot_unchecked(problem, lambda)?;
        let omega = shooting.value.omega;
        if !(omega.abs() > omega_zero_tol * problem.omega_scale()) {
            return Err(SolverError::NearSpectrum { lambda, omega });
        }
        Ok(GreenKernel {
            lambda,
            omega,
            phi: shooting.phi,
            chi: shooting.chi,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn phi(&self) -> &FullTrace {
        &self.phi
    }

    pub fn chi(&self) -> &FullTrace {
        &self.chi
    }

    pub fn eval(&self, x: Point, xi: Point) -> KernelEvaluation {
        let (lo, hi, branch) = if xi.precedes(&x) {
            (xi, x, Branch::XiFirst)
        } else {
            (x, xi, Branch::XFirst)
        };
        let value = self.phi.eval(lo).0 * self.chi.eval(hi).0 / self.omega;
        KernelEvaluation {
            x: x.x(),
            xi: xi.x(),
            lambda: self.lambda,
            value,
            branch,
        }
    }

    /// `u = -[(Δ34/p1) ∫ G f + (Δ12/p2) ∫ G f]` on the solver grid, with `u'`.
    ///
    /// Splitting the kernel at `ξ = x` gives `u = -(χ A + φ B) / Ω` where
    /// `A(x)` is the weighted integral of `φ f` from `-π` to `x` and `B(x)` the
    /// weighted integral of `χ f` from `x` to `π`; the same combination with
    /// `χ'`, `φ'` is the exact derivative.
    pub fn apply(&self, problem: &TwoIntervalProblem, f: &FullTrace) -> Result<FullTrace> {
        problem.check_trace(f)?;
        if self.phi.steps() != f.steps() {
            return Err(SolverError::GridMismatch {
                expected: self.phi.steps(),
                found: f.steps(),
            });
        }
        let n = f.steps();
        let h = f.step();
        let product = |g: &FullTrace, side: Side| -> Vec<f64> {
            g.side(side)
                .y
                .iter()
                .zip(&f.side(side).y)
                .map(|(a, b)| a * b)
                .collect()
        };
        let forward = |side: Side| -> Vec<f64> {
            let w = problem.weight(side);
            cumulative_integral(&product(&self.phi, side), h)
                .into_iter()
                .map(|v| w * v)
                .collect()
        };
        // integrate χ f from the node to the right end of the subinterval
        let backward = |side: Side| -> Vec<f64> {
            let w = problem.weight(side);
            let mut v = product(&self.chi, side);
            v.reverse();
            let mut c = cumulative_integral(&v, h);
            c.reverse();
            c.into_iter().map(|v| w * v).collect()
        };

        let mut a_left = forward(Side::Left);
        let mut a_right = forward(Side::Right);
        let mut b_left = backward(Side::Left);
        let mut b_right = backward(Side::Right);
        let a_total = a_left[n];
        a_right.iter_mut().for_each(|v| *v += a_total);
        let b_total = b_right[0];
        b_left.iter_mut().for_each(|v| *v += b_total);
        // make the interface values agree exactly with the totals
        a_left[n] = a_total;
        b_right[n] = 0.0;

        let assemble = |side: Side, a: &[f64], b: &[f64]| -> Samples {
            let phi = self.phi.side(side);
            let chi = self.chi.side(side);
            let inv = -1.0 / self.omega;
            Samples {
                y: (0..=n).map(|i| inv * (chi.y[i] * a[i] + phi.y[i] * b[i])).collect(),
                dy: (0..=n).map(|i| inv * (chi.dy[i] * a[i] + phi.dy[i] * b[i])).collect(),
            }
        };
        FullTrace::new(
            n,
            assemble(Side::Left, &a_left, &b_left),
            assemble(Side::Right, &a_right, &b_right),
        )
    }
}

pub fn green_eval(problem: &TwoIntervalProblem, lambda: f64, x: Point, xi: Point) -> Result<f64> {
    Ok(GreenKernel::new(problem, lambda)?.eval(x, xi).value)
}

/// Solves `-p u'' + (q - λ) u = f` with all boundary and transmission
/// conditions.
pub fn resolvent_quadrature(
    problem: &TwoIntervalProblem,
    lambda: f64,
    f: &impl Integrand,
) -> Result<FullTrace> {
    let kernel = GreenKernel::new(problem, lambda)?;
    let f = f.sample(problem)?;
    kernel.apply(problem, &f)
}

fn check_terms(spectrum: &Spectrum, terms: usize) -> Result<()> {
    if terms > spectrum.len() {
        return Err(SolverError::NotEnoughEigenpairs {
            requested: terms,
            available: spectrum.len(),
        });
    }
    Ok(())
}

/// `-Σ_{n<N} φ̂ₙ(x) φ̂ₙ(ξ) / λₙ`, the truncated bilinear series for `G(x, ξ; 0)`.
pub fn green_series(
    problem: &TwoIntervalProblem,
    spectrum: &Spectrum,
    terms: usize,
    x: Point,
    xi: Point,
) -> Result<f64> {
    if spectrum.shift != 0.0 {
        return Err(SolverError::ShiftedSpectrum {
            shift: spectrum.shift,
        });
    }
    check_terms(spectrum, terms)?;
    let mut sum = 0.0;
    for e in &spectrum.eigenpairs[..terms] {
        problem.check_trace(&e.eigenfunction)?;
        let fx = e.eigenfunction.eval(x).0;
        let fxi = e.eigenfunction.eval(xi).0;
        sum -= fx * fxi / e.lambda;
    }
    Ok(sum)
}

/// `Σ_{n<N} cₙ(f) φ̂ₙ / (λₙ - λ)`.
pub fn resolvent_series(
    problem: &TwoIntervalProblem,
    spectrum: &Spectrum,
    f: &impl Integrand,
    lambda: f64,
    terms: usize,
) -> Result<FullTrace> {
    check_terms(spectrum, terms)?;
    let tol = SolverOptions::default().omega_zero_tol;
    for e in &spectrum.eigenpairs[..terms] {
        let gap = e.lambda - lambda;
        if gap.abs() <= tol * e.lambda.abs().max(1.0) {
            let omega = shoot_unchecked(problem, lambda).map_or(0.0, |s| s.value.omega);
            return Err(SolverError::NearSpectrum { lambda, omega });
        }
    }
    let coeffs = expansion::coefficients(problem, spectrum, f, terms)?;
    let mut u = FullTrace::zeros(problem.grid_steps());
    for (e, c) in spectrum.eigenpairs.iter().zip(&coeffs.values) {
        u.add_scaled(c / (e.lambda - lambda), &e.eigenfunction)?;
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expression;
    use crate::fixtures;
    use crate::model::ode_residual;
    use crate::shoot::{boundary_residuals, transmission_residuals};
    use crate::spectrum::compute_spectrum;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn expr(s: &str) -> Expression {
        s.parse().unwrap()
    }

    #[test]
    fn c0_kernel_at_interface() {
        let p = fixtures::c0();
        let g = green_eval(&p, 0.0, Point::interface(Side::Left), Point::interface(Side::Left))
            .unwrap();
        assert!((g + PI / 2.0).abs() < 1e-6, "{g}");
    }

    #[test]
    fn c0_kernel_closed_form() {
        // φ = -(x + π), χ = x - π, Ω = -2π
        let p = fixtures::c0();
        let k = GreenKernel::new(&p, 0.0).unwrap();
        assert!((k.omega() + 2.0 * PI).abs() < 1e-9);
        for (x, xi) in [(-2.5, 1.0), (0.3, 2.9), (-1.0, -0.2), (1.7, -3.0)] {
            let (a, b) = if x <= xi { (x, xi) } else { (xi, x) };
            let exact = (a + PI) * (b - PI) / (2.0 * PI);
            let got = k.eval(Point::new(x).unwrap(), Point::new(xi).unwrap()).value;
            assert!((got - exact).abs() < 1e-9, "({x}, {xi}): {got} vs {exact}");
        }
    }

    #[test]
    fn kernel_vanishes_at_dirichlet_end() {
        let k = GreenKernel::new(&fixtures::c0(), 0.7).unwrap();
        for xi in [-2.0, 0.5, PI] {
            let v = k.eval(Point::new(-PI).unwrap(), Point::new(xi).unwrap());
            assert!(v.value.abs() < 1e-12);
            assert_eq!(v.branch, Branch::XFirst);
        }
    }

    #[test]
    fn near_spectrum_is_rejected() {
        let err = GreenKernel::new(&fixtures::c0(), 0.25).unwrap_err();
        assert!(matches!(err, SolverError::NearSpectrum { .. }));
        assert!(err.to_string().starts_with("lambda is within tolerance of an eigenvalue"));
    }

    #[test]
    fn c0_resolvent_of_one() {
        let p = fixtures::c0();
        let u = resolvent_quadrature(&p, 0.0, &expr("1")).unwrap();
        let exact = FullTrace::from_fn(p.grid_steps(), |_, x| Ok((PI * PI - x * x) / 2.0)).unwrap();
        assert!(u.max_abs_diff(&exact).unwrap() < 1e-9);
        assert!((u.at_interface_left().0 - PI * PI / 2.0).abs() < 1e-9);
        assert!(u.left().y[0].abs() < 1e-12 && u.right().y[p.grid_steps()].abs() < 1e-12);
        // exact derivative -x
        for i in (0..=p.grid_steps()).step_by(128) {
            let x = p.node_x(Side::Right, i);
            assert!((u.right().dy[i] + x).abs() < 1e-9);
        }
    }

    #[test]
    fn resolvent_is_diagonal_on_eigenfunctions() {
        let p = fixtures::c0();
        let s = compute_spectrum(&p, 3).unwrap();
        let f = &s.eigenpairs[1].eigenfunction;
        let u = resolvent_quadrature(&p, 10.3, f).unwrap();
        let mut expected = f.clone();
        expected.scale(1.0 / (1.0 - 10.3));
        assert!(u.max_abs_diff(&expected).unwrap() < 1e-5);
        let series = resolvent_series(&p, &s, f, 10.3, 3).unwrap();
        assert!(series.max_abs_diff(&u).unwrap() < 1e-5);
    }

    #[test]
    fn resolvent_contract_on_fixtures() {
        let f = expr("1 + x - cos(2*x)");
        for (name, p) in [
            ("c0", fixtures::c0()),
            ("c1", fixtures::c1()),
            ("c2", fixtures::c2()),
            ("skewed", fixtures::skewed()),
        ] {
            let ft = FullTrace::from_expression(p.grid_steps(), &f).unwrap();
            for lambda in [-3.3, 0.1, 1.7, 5.55, 11.9] {
                let u = resolvent_quadrature(&p, lambda, &f).unwrap();
                let r = ode_residual(&p, &u, lambda, Some(&ft)).unwrap();
                assert!(r <= 1e-4 * ft.max_abs(), "{name} λ={lambda}: ode {r}");
                let scale = u.max_abs().max(1.0);
                for b in boundary_residuals(&p, &u).into_iter().chain(transmission_residuals(&p, &u)) {
                    assert!(b.abs() <= 1e-6 * scale, "{name} λ={lambda}: btc {b}");
                }
            }
        }
    }

    #[test]
    fn green_series_single_term() {
        let p = fixtures::c0();
        let s = compute_spectrum(&p, 2).unwrap();
        let zero = Point::interface(Side::Left);
        let g = green_series(&p, &s, 1, zero, zero).unwrap();
        assert!((g + 4.0 / PI).abs() < 1e-5, "{g}");
        assert!(green_series(&p, &s, 2, Point::new(-PI).unwrap(), zero).unwrap().abs() < 1e-10);
        assert!(matches!(
            green_series(&p, &s, 3, zero, zero),
            Err(SolverError::NotEnoughEigenpairs { requested: 3, available: 2 })
        ));
    }

    #[test]
    fn green_series_rejects_shifted_spectrum() {
        let p = fixtures::zero_mode();
        let s = compute_spectrum(&p, 2).unwrap();
        assert!(s.shift != 0.0);
        let zero = Point::interface(Side::Right);
        assert!(matches!(
            green_series(&p, &s, 1, zero, zero),
            Err(SolverError::ShiftedSpectrum { .. })
        ));
    }

    #[test]
    fn green_series_error_is_monotone() {
        let p = fixtures::c0();
        let s = compute_spectrum(&p, 200).unwrap();
        let k = GreenKernel::new(&p, 0.0).unwrap();
        let pts = Point::uniform(9);
        let err = |terms: usize| {
            let mut m: f64 = 0.0;
            for &x in &pts {
                for &xi in &pts {
                    let d = green_series(&p, &s, terms, x, xi).unwrap() - k.eval(x, xi).value;
                    m = m.max(d.abs());
                }
            }
            m
        };
        let errs: Vec<f64> = [25, 50, 100, 200].iter().map(|&n| err(n)).collect();
        assert!(errs.windows(2).all(|w| w[1] <= w[0]), "{errs:?}");
        assert!(errs[3] < 2e-2);
    }

    #[test]
    fn resolvent_series_of_zero() {
        let p = fixtures::c1();
        let s = compute_spectrum(&p, 4).unwrap();
        let u = resolvent_series(&p, &s, &expr("0"), 2.0, 4).unwrap();
        assert_eq!(u.max_abs(), 0.0);
        assert!(resolvent_series(&p, &s, &expr("1"), 0.25, 4).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn kernel_is_symmetric(x in -PI..PI, xi in -PI..PI, lambda in -4.0f64..0.2) {
            prop_assume!(x != 0.0 && xi != 0.0);
            let k = GreenKernel::new(&fixtures::c2(), lambda).unwrap();
            let (a, b) = (Point::new(x).unwrap(), Point::new(xi).unwrap());
            prop_assert_eq!(k.eval(a, b).value, k.eval(b, a).value);
        }
    }
}
