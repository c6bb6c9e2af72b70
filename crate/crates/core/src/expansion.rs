//! Fourier coefficients in the normalized eigenbasis, partial sums, and the
//! Parseval / mean-square diagnostics.

use std::borrow::Cow;

use crate::error::{Result, SolverError};
use crate::exec::Execution;
use crate::expr::Expression;
use crate::green::resolvent_quadrature;
use crate::model::{inner_product, FullTrace, TwoIntervalProblem};
use crate::shoot::{boundary_residuals, transmission_residuals};
use crate::spectrum::Spectrum;
use serde::Serialize;

/// Anything that can be sampled on a problem's grid.
pub trait Integrand {
    fn sample(&self, problem: &TwoIntervalProblem) -> Result<Cow<'_, FullTrace>>;

    /// Short description kept alongside computed coefficients.
    fn describe(&self) -> String;
}

impl Integrand for Expression {
    fn sample(&self, problem: &TwoIntervalProblem) -> Result<Cow<'_, FullTrace>> {
        Ok(Cow::Owned(FullTrace::from_expression(problem.grid_steps(), self)?))
    }

    fn describe(&self) -> String {
        self.source().to_string()
    }
}

impl Integrand for FullTrace {
    fn sample(&self, problem: &TwoIntervalProblem) -> Result<Cow<'_, FullTrace>> {
        problem.check_trace(self)?;
        Ok(Cow::Borrowed(self))
    }

    fn describe(&self) -> String {
        format!("sampled trace ({} steps per subinterval)", self.steps())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientList {
    /// `cₙ` for `n < N`.
    pub values: Vec<f64>,
    pub source: String,
    /// `⟨f, f⟩` on the same grid and rule.
    pub norm2: f64,
    pub grid_steps: usize,
    pub rule: &'static str,
}

impl CoefficientList {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `⟨f, f⟩ - Σ cₙ²` over the first `terms` coefficients.
    pub fn gap(&self, terms: usize) -> f64 {
        self.norm2 - self.values[..terms].iter().map(|c| c * c).sum::<f64>()
    }
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

pub fn fourier_coefficient(
    problem: &TwoIntervalProblem,
    spectrum: &Spectrum,
    f: &impl Integrand,
    n: usize,
) -> Result<f64> {
    let e = spectrum.eigenpairs.get(n).ok_or_else(|| {
        SolverError::IndexOutOfRange(format!("eigenpair {n} of {}", spectrum.len()))
    })?;
    let f = f.sample(problem)?;
    inner_product(problem, &f, &e.eigenfunction)
}

/// `cₙ(f)` for `n < terms`, computed independently per `n`.
pub fn coefficients(
    problem: &TwoIntervalProblem,
    spectrum: &Spectrum,
    f: &impl Integrand,
    terms: usize,
) -> Result<CoefficientList> {
    coefficients_with(problem, spectrum, f, terms, Execution::default())
}

pub fn coefficients_with(
    problem: &TwoIntervalProblem,
    spectrum: &Spectrum,
    f: &impl Integrand,
    terms: usize,
    execution: Execution,
) -> Result<CoefficientList> {
    check_terms(spectrum, terms)?;
    let sampled = f.sample(problem)?;
    let fs: &FullTrace = &sampled;
    let values = execution.try_map(terms, |n| {
        inner_product(problem, fs, &spectrum.eigenpairs[n].eigenfunction)
    })?;
    Ok(CoefficientList {
        values,
        source: f.describe(),
        norm2: inner_product(problem, fs, fs)?,
        grid_steps: problem.grid_steps(),
        rule: "composite simpson",
    })
}

/// `Σ_{n<N} cₙ φ̂ₙ` for given coefficients, summed in ascending `n`.
pub fn synthesize(spectrum: &Spectrum, values: &[f64]) -> Result<FullTrace> {
    check_terms(spectrum, values.len())?;
    let steps = spectrum
        .eigenpairs
        .first()
        .map_or(0, |e| e.eigenfunction.steps());
    let mut sum = FullTrace::zeros(steps);
    for (c, e) in values.iter().zip(&spectrum.eigenpairs) {
        sum.add_scaled(*c, &e.eigenfunction)?;
    }
    Ok(sum)
}

pub fn partial_expansion(
    problem: &TwoIntervalProblem,
    spectrum: &Spectrum,
    f: &impl Integrand,
    terms: usize,
) -> Result<FullTrace> {
    if terms == 0 {
        return Ok(FullTrace::zeros(problem.grid_steps()));
    }
    let c = coefficients(problem, spectrum, f, terms)?;
    synthesize(spectrum, &c.values)
}

/// `⟨f, f⟩ - Σ_{n<N} cₙ²`.
pub fn parseval_gap(
    problem: &TwoIntervalProblem,
    spectrum: &Spectrum,
    f: &impl Integrand,
    terms: usize,
) -> Result<f64> {
    Ok(coefficients(problem, spectrum, f, terms)?.gap(terms))
}

/// `⟨f - S_N, f - S_N⟩` with `S_N` the partial expansion.
pub fn mean_square_error(
    problem: &TwoIntervalProblem,
    spectrum: &Spectrum,
    f: &impl Integrand,
    terms: usize,
) -> Result<f64> {
    let sampled = f.sample(problem)?;
    let mut diff = sampled.into_owned();
    let s = partial_expansion(problem, spectrum, &diff, terms)?;
    diff.add_scaled(-1.0, &s)?;
    inner_product(problem, &diff, &diff)
}

/// `max_{n<N} |cₙ(f) - (λₙ - λ) cₙ(u)| / max(1, |cₙ(f)|)` with `u` the
/// quadrature resolvent of `f` at `λ`.
pub fn coefficient_identity_check(
    problem: &TwoIntervalProblem,
    spectrum: &Spectrum,
    f: &impl Integrand,
    lambda: f64,
    terms: usize,
) -> Result<f64> {
    let u = resolvent_quadrature(problem, lambda, f)?;
    let cf = coefficients(problem, spectrum, f, terms)?;
    let cu = coefficients(problem, spectrum, &u, terms)?;
    let mut worst: f64 = 0.0;
    for ((e, a), b) in spectrum.eigenpairs.iter().zip(&cf.values).zip(&cu.values) {
        worst = worst.max((a - (e.lambda - lambda) * b).abs() / a.abs().max(1.0));
    }
    Ok(worst)
}

/// Residuals of the two boundary and two transmission conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BtcResiduals {
    pub left_boundary: f64,
    pub right_boundary: f64,
    pub transmission_first: f64,
    pub transmission_second: f64,
}

impl BtcResiduals {
    pub fn max(&self) -> f64 {
        self.left_boundary
            .max(self.right_boundary)
            .max(self.transmission_first)
            .max(self.transmission_second)
    }
}

/// Absolute residuals of all four conditions; derivatives come from the
/// trace, which for sampled functions means one-sided differences at the
/// subinterval ends.
pub fn check_btc(problem: &TwoIntervalProblem, f: &FullTrace) -> Result<BtcResiduals> {
    problem.check_trace(f)?;
    let [l, r] = boundary_residuals(problem, f);
    let [t1, t2] = transmission_residuals(problem, f);
    Ok(BtcResiduals {
        left_boundary: l.abs(),
        right_boundary: r.abs(),
        transmission_first: t1.abs(),
        transmission_second: t2.abs(),
    })
}
