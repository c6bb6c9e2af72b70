//! Property suites run by `slt verify`: each check measures one quantity on
//! a fixture and compares it against a fixed tolerance.

use std::f64::consts::PI;
use std::fmt;

use crate::error::Result;
use crate::expansion::{coefficient_identity_check, coefficients, synthesize};
use crate::expr::Expression;
use crate::fixtures;
use crate::green::{green_series, resolvent_quadrature, resolvent_series, GreenKernel};
use crate::model::{inner_product, ode_residual, FullTrace, Point, Side, TwoIntervalProblem};
use crate::options::SolverOptions;
use crate::shoot::{boundary_residuals, characteristic, transmission_residuals};
use crate::spectrum::{compute_spectrum_with, Spectrum};

/// Fixtures covered by `verify --fixture all`.
pub const SUITE_FIXTURES: [&str; 3] = ["c0", "c1", "c2"];

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub fixture: String,
    pub property: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {} {}: {}", self.fixture, self.property, self.detail)
    }
}

struct Suite {
    fixture: String,
    results: Vec<PropertyResult>,
}

impl Suite {
    /// Records `value <= tol`; errors count as failures.
    fn bound(&mut self, property: &'static str, value: Result<f64>, tol: f64) {
        let (passed, detail) = match value {
            Ok(v) => (v <= tol, format!("{v:.3e} (limit {tol:.0e})")),
            Err(e) => (false, format!("error: {e}")),
        };
        self.push(property, passed, detail);
    }

    fn check(&mut self, property: &'static str, outcome: Result<(bool, String)>) {
        match outcome {
            Ok((passed, detail)) => self.push(property, passed, detail),
            Err(e) => self.push(property, false, format!("error: {e}")),
        }
    }

    fn push(&mut self, property: &'static str, passed: bool, detail: String) {
        self.results.push(PropertyResult {
            fixture: self.fixture.clone(),
            property,
            passed,
            detail,
        });
    }
}

fn expr(s: &str) -> Expression {
    s.parse().expect("built-in expression")
}

/// Five λ values away from the spectrum: midpoints between consecutive
/// eigenvalues, plus one below the lowest.
fn off_spectrum(spectrum: &Spectrum) -> Vec<f64> {
    let v = spectrum.eigenvalues();
    let mut out = vec![v[0] - 1.0];
    out.extend(v.windows(2).take(4).map(|w| 0.5 * (w[0] + w[1])));
    out
}

fn max_gram_error(problem: &TwoIntervalProblem, spectrum: &Spectrum, m: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..m {
        for j in 0..=i {
            let g = inner_product(
                problem,
                &spectrum.eigenpairs[i].eigenfunction,
                &spectrum.eigenpairs[j].eigenfunction,
            )?;
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - want).abs());
        }
    }
    Ok(worst)
}

fn wronskian_consistency(problem: &TwoIntervalProblem) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let lambda = -5.0 + 30.0 * k as f64 / 49.0;
        worst = worst.max(characteristic(problem, lambda)?.consistency_residual);
    }
    Ok(worst)
}

fn resolvent_residuals(problem: &TwoIntervalProblem, spectrum: &Spectrum) -> Result<(f64, f64)> {
    let f = expr("1 + x - cos(2*x)");
    let ft = FullTrace::from_expression(problem.grid_steps(), &f)?;
    let (mut ode, mut btc): (f64, f64) = (0.0, 0.0);
    for lambda in off_spectrum(spectrum) {
        let u = resolvent_quadrature(problem, lambda, &ft)?;
        ode = ode.max(ode_residual(problem, &u, lambda, Some(&ft))? / ft.max_abs());
        let scale = u.max_abs().max(1.0);
        for r in boundary_residuals(problem, &u)
            .into_iter()
            .chain(transmission_residuals(problem, &u))
        {
            btc = btc.max(r.abs() / scale);
        }
    }
    Ok((ode, btc))
}

/// A smooth function that satisfies every boundary and transmission
/// condition: the resolvent of a constant.
fn admissible_function(problem: &TwoIntervalProblem, spectrum: &Spectrum) -> Result<FullTrace> {
    resolvent_quadrature(problem, off_spectrum(spectrum)[0], &expr("1"))
}

fn kernel_symmetry(problem: &TwoIntervalProblem, lambda: f64) -> Result<f64> {
    let k = GreenKernel::new(problem, lambda)?;
    let pts = Point::uniform(13);
    let mut worst: f64 = 0.0;
    for &a in &pts {
        for &b in &pts {
            worst = worst.max((k.eval(a, b).value - k.eval(b, a).value).abs());
        }
    }
    Ok(worst)
}

fn nonincreasing(v: &[f64], slack: f64) -> bool {
    v.windows(2).all(|w| w[1] <= w[0] + slack)
}

fn bessel_sign(problem: &TwoIntervalProblem, spectrum: &Spectrum) -> Result<(bool, String)> {
    let c = coefficients(problem, spectrum, &expr("x/abs(x)"), 80)?;
    let gaps: Vec<f64> = [5, 10, 20, 40, 80].iter().map(|&n| c.gap(n)).collect();
    let ok = nonincreasing(&gaps, 0.0) && gaps.iter().all(|&g| g >= -1e-8 * c.norm2);
    Ok((ok, format!("gaps {}", fmt_list(&gaps))))
}

fn uniform_convergence(problem: &TwoIntervalProblem, spectrum: &Spectrum) -> Result<(bool, String)> {
    let f = admissible_function(problem, spectrum)?;
    let c = coefficients(problem, spectrum, &f, 80)?;
    let errs = [5, 10, 20, 40, 80]
        .iter()
        .map(|&n| synthesize(spectrum, &c.values[..n])?.max_abs_diff(&f))
        .collect::<Result<Vec<f64>>>()?;
    Ok((nonincreasing(&errs, 0.0), format!("sup errors {}", fmt_list(&errs))))
}

fn series_agreement(problem: &TwoIntervalProblem, spectrum: &Spectrum) -> Result<f64> {
    let f = admissible_function(problem, spectrum)?;
    let lambda = off_spectrum(spectrum)[2];
    let u = resolvent_quadrature(problem, lambda, &f)?;
    let s = resolvent_series(problem, spectrum, &f, lambda, 200)?;
    Ok(s.max_abs_diff(&u)? / u.max_abs())
}

fn idempotence(problem: &TwoIntervalProblem, spectrum: &Spectrum) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for m in [0, 2, 5] {
        let phi = &spectrum.eigenpairs[m].eigenfunction;
        let c = coefficients(problem, spectrum, phi, 8)?;
        worst = worst.max(synthesize(spectrum, &c.values)?.max_abs_diff(phi)?);
    }
    Ok(worst)
}

fn green_series_monotone(problem: &TwoIntervalProblem, spectrum: &Spectrum) -> Result<(bool, String)> {
    let k = GreenKernel::new(problem, 0.0)?;
    let pts = Point::uniform(9);
    let errs = [25, 50, 100, 200]
        .iter()
        .map(|&n| {
            let mut m: f64 = 0.0;
            for &a in &pts {
                for &b in &pts {
                    m = m.max((green_series(problem, spectrum, n, a, b)? - k.eval(a, b).value).abs());
                }
            }
            Ok(m)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok((nonincreasing(&errs, 0.0), format!("sup errors {}", fmt_list(&errs))))
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>().join(" ")
}

fn generic(suite: &mut Suite, problem: &TwoIntervalProblem, spectrum: &Spectrum) {
    suite.bound("wronskian_identity", wronskian_consistency(problem), 1e-8);
    let btc = spectrum
        .eigenpairs
        .iter()
        .take(20)
        .map(|e| e.residuals.btc())
        .fold(0.0, f64::max);
    suite.bound("eigenfunction_btc", Ok(btc), 1e-8);
    suite.bound("orthonormality", max_gram_error(problem, spectrum, 8), 1e-6);
    suite.bound("kernel_symmetry", kernel_symmetry(problem, off_spectrum(spectrum)[1]), 0.0);
    match resolvent_residuals(problem, spectrum) {
        Ok((ode, btc)) => {
            suite.bound("resolvent_ode_residual", Ok(ode), 1e-4);
            suite.bound("resolvent_btc", Ok(btc), 1e-6);
        }
        Err(e) => suite.check("resolvent_ode_residual", Err(e)),
    }
    suite.bound("series_vs_quadrature", series_agreement(problem, spectrum), 1e-3);
    let f = admissible_function(problem, spectrum);
    suite.bound(
        "coefficient_identity",
        f.and_then(|f| coefficient_identity_check(problem, spectrum, &f, off_spectrum(spectrum)[3], 40)),
        1e-4,
    );
    suite.bound("expansion_idempotence", idempotence(problem, spectrum), 1e-6);
    suite.check("bessel_sign_function", bessel_sign(problem, spectrum));
    suite.check("uniform_convergence", uniform_convergence(problem, spectrum));
    if spectrum.shift == 0.0 {
        suite.check("green_series_monotone", green_series_monotone(problem, spectrum));
    }
}

fn c0_specific(suite: &mut Suite, problem: &TwoIntervalProblem, spectrum: &Spectrum) {
    let eig = spectrum
        .eigenvalues()
        .iter()
        .take(8)
        .enumerate()
        .map(|(k, v)| (v - ((k + 1) as f64 / 2.0).powi(2)).abs())
        .fold(0.0, f64::max);
    suite.bound("closed_form_eigenvalues", Ok(eig), 1e-6);
    let zero = Point::interface(Side::Left);
    suite.bound(
        "kernel_at_interface",
        GreenKernel::new(problem, 0.0).map(|k| (k.eval(zero, zero).value + PI / 2.0).abs()),
        1e-6,
    );
    suite.bound(
        "resolvent_closed_form",
        resolvent_quadrature(problem, 0.0, &expr("1")).and_then(|u| {
            let exact = FullTrace::from_expression(problem.grid_steps(), &expr("(pi^2 - x^2)/2"))?;
            u.max_abs_diff(&exact)
        }),
        1e-5,
    );
    let f = expr("pi^2 - x^2");
    suite.check(
        "parseval_parabola",
        coefficients(problem, spectrum, &f, 50).map(|c| {
            let norm_err = (c.norm2 - 16.0 * PI.powi(5) / 15.0).abs();
            let gap = c.gap(50);
            (
                norm_err <= 1e-6 && gap >= 0.0 && gap <= 1e-4 * c.norm2,
                format!("norm error {norm_err:.3e}, gap/norm {:.3e}", gap / c.norm2),
            )
        }),
    );
}

fn c1_specific(suite: &mut Suite, spectrum: &Spectrum) {
    let eig = spectrum
        .eigenvalues()
        .iter()
        .take(6)
        .enumerate()
        .map(|(k, v)| (v - ((k + 1) as f64 / 2.0).powi(2)).abs())
        .fold(0.0, f64::max);
    suite.bound("closed_form_eigenvalues", Ok(eig), 1e-6);
    // n = 1, 3, 5 (k odd) do not vanish at the interface
    let ratio = spectrum
        .eigenpairs
        .iter()
        .take(6)
        .step_by(2)
        .map(|e| {
            let (l, r) = (e.eigenfunction.at_interface_left().0, e.eigenfunction.at_interface_right().0);
            ((r / l).abs() - 2.0).abs()
        })
        .fold(0.0, f64::max);
    suite.bound("interface_jump_ratio", Ok(ratio), 1e-6);
}

/// Runs every property for one named fixture.
pub fn run_fixture(name: &str, opts: &SolverOptions) -> Result<Vec<PropertyResult>> {
    let problem = fixtures::by_name(name).ok_or_else(|| {
        crate::error::SolverError::InvalidArgument(format!(
            "unknown fixture `{name}` (expected one of {})",
            fixtures::NAMES.join(", ")
        ))
    })?;
    let spectrum = compute_spectrum_with(&problem, 200, opts)?;
    let mut suite = Suite {
        fixture: name.to_string(),
        results: Vec::new(),
    };
    generic(&mut suite, &problem, &spectrum);
    match name {
        "c0" => c0_specific(&mut suite, &problem, &spectrum),
        "c1" => c1_specific(&mut suite, &spectrum),
        "zero-mode" => {
            let base = compute_spectrum_with(&fixtures::c0(), 8, opts)?;
            let drift = spectrum
                .eigenvalues()
                .iter()
                .zip(base.eigenvalues())
                .map(|(a, b)| (a - (b - 0.25)).abs())
                .fold(0.0, f64::max);
            suite.check("shift_applied", Ok((spectrum.shift != 0.0, format!("shift {}", spectrum.shift))));
            suite.bound("shifted_eigenvalues", Ok(drift), 1e-6);
        }
        _ => {}
    }
    Ok(suite.results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::compute_spectrum;

    #[test]
    fn off_spectrum_points_avoid_eigenvalues() {
        let s = compute_spectrum(&fixtures::c0(), 6).unwrap();
        let want = [-0.75, 0.625, 1.625, 3.125, 5.125];
        for (got, want) in off_spectrum(&s).into_iter().zip(want) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn result_lines() {
        let r = PropertyResult {
            fixture: "c1".into(),
            property: "orthonormality",
            passed: false,
            detail: "2.000e-3 (limit 1e-6)".into(),
        };
        assert_eq!(r.to_string(), "FAIL c1 orthonormality: 2.000e-3 (limit 1e-6)");
    }

    #[test]
    fn unknown_fixture() {
        assert!(run_fixture("c9", &SolverOptions::default()).is_err());
    }

    #[test]
    fn nonincreasing_with_slack() {
        assert!(nonincreasing(&[3.0, 2.0, 2.0, 1.0], 0.0));
        assert!(!nonincreasing(&[3.0, 2.0, 2.5], 0.1));
    }
}
