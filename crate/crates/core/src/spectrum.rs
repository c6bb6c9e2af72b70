//! Eigenvalues as real zeros of the characteristic function.
//!
//! The positive half line is scanned uniformly in `s = √λ`, which keeps the
//! number of grid points per root roughly constant because consecutive
//! `s_n` are asymptotically `1/2` apart. Negative `λ` are scanned linearly.
//! Sign changes are refined by bisection and the eigenfunctions normalized
//! in the weighted inner product.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Result, SolverError};
use crate::model::{inner_product, ode_residual, FullTrace, Side, TwoIntervalProblem};
use crate::options::SolverOptions;
use crate::shoot::{boundary_residuals, omega_unchecked, shoot_unchecked, transmission_residuals};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenResiduals {
    /// `|Ω(λ_n)|` over its largest possible size at the joining node, i.e. the
    /// sine of the angle between φ and χ there. Dimensionless.
    pub omega: f64,
    /// Left and right boundary conditions of the normalized eigenfunction.
    pub boundary: [f64; 2],
    /// Both transmission conditions of the normalized eigenfunction.
    pub transmission: [f64; 2],
    /// Largest interior residual of the differential equation.
    pub ode: f64,
}

impl EigenResiduals {
    /// Largest of the four boundary/transmission residuals.
    pub fn btc(&self) -> f64 {
        self.boundary
            .iter()
            .chain(&self.transmission)
            .fold(0.0, |m, r| m.max(r.abs()))
    }
}

#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub n: usize,
    pub lambda: f64,
    /// `√λ` for nonnegative eigenvalues.
    pub s: Option<f64>,
    /// Unit weighted norm.
    pub eigenfunction: FullTrace,
    /// Weighted norm of `φ(·, λ)` before normalization.
    pub norm_constant: f64,
    pub residuals: EigenResiduals,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub omega_lo: f64,
    pub omega_hi: f64,
}

impl Bracket {
    fn exact(lambda: f64) -> Bracket {
        Bracket {
            lo: lambda,
            hi: lambda,
            omega_lo: 0.0,
            omega_hi: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub brackets: Vec<Bracket>,
    /// Same-sign near-zero minima of `|Ω|`; possible double roots.
    pub suspected_tangential: Vec<f64>,
    pub nodes: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ScanMetadata {
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub s_step: f64,
    pub lambda_step: f64,
    pub brackets_found: usize,
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenpairs: Vec<Eigenpair>,
    /// `λ̃` such that the problem with `q - λ̃` does not have `0` as an
    /// eigenvalue; zero when no shift was needed.
    pub shift: f64,
    pub scan: ScanMetadata,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct EigenvalueRecord {
    n: usize,
    lambda: f64,
    s: Option<f64>,
    norm_constant: f64,
    omega_residual: f64,
    btc_residual: f64,
}

#[derive(Serialize)]
struct SpectrumRecord {
    shift: f64,
    eigenvalues: Vec<EigenvalueRecord>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenpairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenpairs.is_empty()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigenpairs.iter().map(|e| e.lambda).collect()
    }

    pub fn to_json(&self) -> String {
        let record = SpectrumRecord {
            shift: self.shift,
            eigenvalues: self
                .eigenpairs
                .iter()
                .map(|e| EigenvalueRecord {
                    n: e.n,
                    lambda: e.lambda,
                    s: e.s,
                    norm_constant: e.norm_constant,
                    omega_residual: e.residuals.omega,
                    btc_residual: e.residuals.btc(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&record).expect("spectrum serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,lambda,s,norm_constant\n");
        for e in &self.eigenpairs {
            let s = e.s.map(|s| s.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{}", e.n, e.lambda, s, e.norm_constant);
        }
        out
    }
}

/// Which of the four asymptotic regimes applies, from the boundary angles.
pub fn asymptotic_s(problem: &TwoIntervalProblem, n: usize) -> f64 {
    const ZERO: f64 = 1e-14;
    let alpha_free = problem.alpha().sin().abs() > ZERO;
    let beta_free = problem.beta().sin().abs() > ZERO;
    if alpha_free && beta_free {
        (n as f64 - 1.0) / 2.0
    } else {
        n as f64 / 2.0
    }
}

fn grid(lo: f64, hi: f64, max_step: f64, min_points: usize) -> Vec<f64> {
    let span = hi - lo;
    if span <= 0.0 {
        return vec![lo];
    }
    let by_step = (span / max_step).ceil() as usize;
    let m = by_step.max(min_points.saturating_sub(1)).max(1);
    (0..=m)
        .map(|k| if k == m { hi } else { lo + span * k as f64 / m as f64 })
        .collect()
}

/// Scan nodes: linear in `λ` below zero, linear in `√λ` above.
fn scan_nodes(
    problem: &TwoIntervalProblem,
    lo: f64,
    hi: f64,
    points: usize,
    opts: &SolverOptions,
) -> Vec<f64> {
    let mut nodes = Vec::new();
    if lo < 0.0 {
        let top = hi.min(0.0);
        let mut neg = grid(lo, top, opts.negative_lambda_step, points);
        if hi > 0.0 {
            neg.pop();
        }
        nodes.extend(neg);
    }
    if hi > 0.0 {
        let s_lo = lo.max(0.0).sqrt();
        let s_hi = hi.sqrt();
        nodes.extend(grid(s_lo, s_hi, s_step(problem, opts), points).into_iter().map(|s| s * s));
    } else if hi == 0.0 && lo >= 0.0 {
        nodes.push(0.0);
    }
    nodes
}

/// Scan spacing in `s`, narrowed when `p < 1` shrinks the eigenvalue gaps.
fn s_step(problem: &TwoIntervalProblem, opts: &SolverOptions) -> f64 {
    let p_min = problem.p1().min(problem.p2());
    opts.s_resolution * p_min.sqrt().min(1.0)
}

pub fn scan_brackets(
    problem: &TwoIntervalProblem,
    lambda_lo: f64,
    lambda_hi: f64,
    points: usize,
) -> Result<ScanResult> {
    scan_brackets_with(problem, lambda_lo, lambda_hi, points, &SolverOptions::default())
}

pub fn scan_brackets_with(
    problem: &TwoIntervalProblem,
    lambda_lo: f64,
    lambda_hi: f64,
    points: usize,
    opts: &SolverOptions,
) -> Result<ScanResult> {
    if !(lambda_lo < lambda_hi) || points < 2 {
        return Err(SolverError::InvalidArgument(format!(
            "scan needs lambda_lo < lambda_hi and points >= 2 (got [{lambda_lo}, {lambda_hi}], {points})"
        )));
    }
    problem.ensure_valid()?;
    let nodes = scan_nodes(problem, lambda_lo, lambda_hi, points, opts);
    let omegas = opts
        .execution
        .try_map(nodes.len(), |i| omega_unchecked(problem, nodes[i]))?;
    resolve_dips(problem, &nodes, &omegas, opts, DIP_DEPTH)
}

/// Levels of resampling tried on a suspected tangential zero.
const DIP_DEPTH: usize = 4;
const DIP_SAMPLES: usize = 16;

/// Brackets from sampled values, with every same-sign dip of `|Ω|` resampled
/// more finely. A scan node that lands on an eigenvalue sees `Ω` as rounding
/// noise and can hide it together with a close neighbour; only dips that
/// still show no sign change after `depth` levels are reported.
fn resolve_dips(
    problem: &TwoIntervalProblem,
    nodes: &[f64],
    omegas: &[f64],
    opts: &SolverOptions,
    depth: usize,
) -> Result<ScanResult> {
    let mut scan = collect_brackets(nodes, omegas, opts.tangential_tol);
    if depth == 0 || scan.suspected_tangential.is_empty() {
        return Ok(scan);
    }
    let mut unresolved = Vec::new();
    for t in std::mem::take(&mut scan.suspected_tangential) {
        let i = nodes.iter().position(|&x| x == t).unwrap_or(0);
        let (lo, hi) = (nodes[i.saturating_sub(1)], nodes[(i + 1).min(nodes.len() - 1)]);
        let fine: Vec<f64> = (0..=DIP_SAMPLES)
            .map(|k| lo + (hi - lo) * k as f64 / DIP_SAMPLES as f64)
            .collect();
        let values = opts
            .execution
            .try_map(fine.len(), |k| omega_unchecked(problem, fine[k]))?;
        let sub = resolve_dips(problem, &fine, &values, opts, depth - 1)?;
        scan.nodes += sub.nodes;
        if sub.brackets.is_empty() {
            unresolved.push(t);
        } else {
            // an exact zero at a shared end could appear twice
            for b in sub.brackets {
                if !scan.brackets.contains(&b) {
                    scan.brackets.push(b);
                }
            }
            unresolved.extend(sub.suspected_tangential);
        }
    }
    scan.brackets.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    scan.suspected_tangential = unresolved;
    Ok(scan)
}

fn collect_brackets(nodes: &[f64], omegas: &[f64], tangential_tol: f64) -> ScanResult {
    let mut brackets = Vec::new();
    for i in 0..nodes.len() {
        if omegas[i] == 0.0 {
            brackets.push(Bracket::exact(nodes[i]));
            continue;
        }
        if i + 1 < nodes.len() && omegas[i] * omegas[i + 1] < 0.0 {
            brackets.push(Bracket {
                lo: nodes[i],
                hi: nodes[i + 1],
                omega_lo: omegas[i],
                omega_hi: omegas[i + 1],
            });
        }
    }
    let mut suspected_tangential = Vec::new();
    for i in 1..nodes.len().saturating_sub(1) {
        let (a, b, c) = (omegas[i - 1], omegas[i], omegas[i + 1]);
        let same_sign = a * b > 0.0 && b * c > 0.0;
        let local_min = b.abs() <= a.abs() && b.abs() <= c.abs();
        if same_sign && local_min && b.abs() < tangential_tol * a.abs().max(c.abs()) {
            suspected_tangential.push(nodes[i]);
        }
    }
    ScanResult {
        brackets,
        suspected_tangential,
        nodes: nodes.len(),
    }
}

pub fn refine_eigenvalue(problem: &TwoIntervalProblem, bracket: Bracket, tol: f64) -> Result<f64> {
    problem.ensure_valid()?;
    refine_unchecked(problem, bracket, tol)
}

fn refine_unchecked(problem: &TwoIntervalProblem, bracket: Bracket, tol: f64) -> Result<f64> {
    let Bracket {
        mut lo,
        mut hi,
        mut omega_lo,
        mut omega_hi,
    } = bracket;
    if lo == hi {
        return Ok(lo);
    }
    if omega_lo == 0.0 {
        return Ok(lo);
    }
    if omega_hi == 0.0 {
        return Ok(hi);
    }
    if omega_lo * omega_hi > 0.0 || !(lo < hi) {
        return Err(SolverError::NoSignChange { lo, hi });
    }
    while hi - lo > tol * lo.abs().max(hi.abs()).max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let om = omega_unchecked(problem, mid)?;
        if om == 0.0 {
            return Ok(mid);
        }
        if om * omega_lo < 0.0 {
            hi = mid;
            omega_hi = om;
        } else {
            lo = mid;
            omega_lo = om;
        }
    }
    // Final linear interpolation inside the converged bracket; it stays within
    // the bracket and leaves a much smaller |Ω| than the midpoint when Ω is
    // steep (exponentially growing solutions at negative λ).
    let t = omega_lo / (omega_lo - omega_hi);
    Ok(if t.is_finite() && (0.0..=1.0).contains(&t) {
        lo + t * (hi - lo)
    } else {
        0.5 * (lo + hi)
    })
}

/// Builds the normalized eigenfunction `-φ(·, λ) / ‖φ(·, λ)‖`.
pub fn normalize_eigenfunction(problem: &TwoIntervalProblem, lambda: f64) -> Result<Eigenpair> {
    problem.ensure_valid()?;
    normalize_unchecked(problem, lambda, SolverOptions::default().norm_floor)
}

/// `φ` up to a matching node and `c χ` after it, where `c` makes the two
/// agree at the node.
///
/// At an eigenvalue `φ` and `χ` are proportional, but shooting into a region
/// where the eigenfunction decays amplifies rounding like the growing
/// solution does: `φ` is only trustworthy up to the bulk of the
/// eigenfunction and `χ` only after it. The node maximizing `|φ| |χ|` (with
/// derivatives scaled to the local frequency) sits there; it is found from
/// log amplitudes since the product itself can overflow.
///
/// Also returns `k |(φ, φ'/k)| |(χ, χ'/k)|` at the joining node, the largest
/// value the Wronskian of φ and χ could take there.
fn joined_eigenfunction(phi: &FullTrace, chi: &FullTrace, lambda: f64, p_min: f64) -> (FullTrace, f64) {
    let n = phi.steps();
    let k = (lambda.abs().max(1.0) / p_min).sqrt();
    let amp = |y: f64, dy: f64| y.hypot(dy / k);
    let mut best = (Side::Left, 0, f64::NEG_INFINITY);
    for side in Side::BOTH {
        let (a, b) = (phi.side(side), chi.side(side));
        for i in 0..=n {
            let w = amp(a.y[i], a.dy[i]).ln() + amp(b.y[i], b.dy[i]).ln();
            if w > best.2 {
                best = (side, i, w);
            }
        }
    }
    let (side, m, _) = best;
    let (a, b) = (phi.side(side), chi.side(side));
    let (amp_a, amp_b) = (amp(a.y[m], a.dy[m]), amp(b.y[m], b.dy[m]));
    let scale = k * amp_a * amp_b;
    // projection of (φ, φ'/k) on the direction of (χ, χ'/k), over |χ|
    let (uy, udy) = (b.y[m] / amp_b, b.dy[m] / (k * amp_b));
    let c = (a.y[m] * uy + a.dy[m] / k * udy) / amp_b;
    if !c.is_finite() {
        return (phi.clone(), scale);
    }
    let mut out = phi.clone();
    let copy_from = |out: &mut FullTrace, s: Side, from: usize| {
        let src = chi.side(s);
        let dst = out.side_mut(s);
        for i in from..=n {
            dst.y[i] = c * src.y[i];
            dst.dy[i] = c * src.dy[i];
        }
    };
    copy_from(&mut out, side, m);
    if side == Side::Left {
        copy_from(&mut out, Side::Right, 0);
    }
    (out, scale)
}

fn normalize_unchecked(problem: &TwoIntervalProblem, lambda: f64, floor: f64) -> Result<Eigenpair> {
    let shooting = shoot_unchecked(problem, lambda)?;
    let p_min = problem.p1().min(problem.p2());
    let (mut phi, scale) = joined_eigenfunction(&shooting.phi, &shooting.chi, lambda, p_min);
    // squares of a strongly localized eigenfunction can overflow
    let peak = phi.max_abs();
    let norm = if peak > 0.0 && peak.is_finite() {
        let mut unit = phi.clone();
        unit.scale(1.0 / peak);
        peak * inner_product(problem, &unit, &unit)?.sqrt()
    } else {
        inner_product(problem, &phi, &phi)?.sqrt()
    };
    if !(norm >= floor) {
        return Err(SolverError::TrivialEigenfunction { lambda, norm });
    }
    // φ starts from (sin α, -cos α); flipping the sign gives the usual
    // orientation (y'(-π) > 0 under a Dirichlet left end, +sin on C0)
    phi.scale(-1.0 / norm);
    let residuals = EigenResiduals {
        omega: shooting.value.omega.abs() / (problem.transmission().d(3, 4).abs() * scale),
        boundary: boundary_residuals(problem, &phi).map(f64::abs),
        transmission: transmission_residuals(problem, &phi).map(f64::abs),
        ode: ode_residual(problem, &phi, lambda, None)?,
    };
    // reported eigenvalues always belong to the unshifted potential
    let lambda_original = lambda + problem.potential_shift();
    Ok(Eigenpair {
        n: 0,
        lambda: lambda_original,
        s: (lambda_original >= 0.0).then(|| lambda_original.sqrt()),
        eigenfunction: phi,
        norm_constant: norm,
        residuals,
    })
}

/// All refined roots of `Ω` in `[lambda_lo, lambda_hi]`, ascending.
pub fn eigenvalues_in_range(
    problem: &TwoIntervalProblem,
    lambda_lo: f64,
    lambda_hi: f64,
    opts: &SolverOptions,
) -> Result<Vec<f64>> {
    let scan = scan_brackets_with(problem, lambda_lo, lambda_hi, 2, opts)?;
    refine_all(problem, &scan.brackets, opts)
}

fn refine_all(
    problem: &TwoIntervalProblem,
    brackets: &[Bracket],
    opts: &SolverOptions,
) -> Result<Vec<f64>> {
    let mut roots = opts.execution.try_map(brackets.len(), |i| {
        refine_unchecked(problem, brackets[i], opts.refine_tol)
    })?;
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= opts.refine_tol * a.abs().max(1.0));
    Ok(roots)
}

struct RootSearch {
    roots: Vec<f64>,
    scan: ScanMetadata,
    warnings: Vec<String>,
}

/// Roots below `floor`. Robin-type boundary or interface terms can pull
/// eigenvalues far under `-max|q|`, so Ω is probed on `λ = floor - t²` with a
/// step in `t` that grows slowly, until the solutions overflow or the limit
/// is reached. Returns the roots and the lowest `λ` probed.
fn deep_roots(
    problem: &TwoIntervalProblem,
    floor: f64,
    opts: &SolverOptions,
) -> Result<(Vec<f64>, f64, usize, Vec<f64>)> {
    let mut ts = vec![0.0];
    let base = s_step(problem, opts);
    loop {
        let t = *ts.last().unwrap();
        let next = t + base.max(t / 64.0);
        if floor - next * next < -opts.lambda_hi_limit {
            break;
        }
        ts.push(next);
    }
    let probed = opts.execution.map(ts.len(), |i| {
        let lambda = floor - ts[i] * ts[i];
        omega_unchecked(problem, lambda).ok().filter(|o| o.is_finite())
    });
    let usable = probed.iter().take_while(|o| o.is_some()).count();
    let mut nodes: Vec<f64> = ts[..usable].iter().map(|t| floor - t * t).collect();
    let mut omegas: Vec<f64> = probed[..usable].iter().map(|o| o.unwrap()).collect();
    // ascending, ending at the floor itself (t = 0)
    nodes.reverse();
    omegas.reverse();
    let lowest = nodes.first().copied().unwrap_or(floor);
    let scan = resolve_dips(problem, &nodes, &omegas, opts, DIP_DEPTH)?;
    let roots = refine_all(problem, &scan.brackets, opts)?;
    Ok((roots, lowest, scan.brackets.len(), scan.suspected_tangential))
}

/// Scans upward from below the potential until `count` roots are found.
fn find_roots(problem: &TwoIntervalProblem, count: usize, opts: &SolverOptions) -> Result<RootSearch> {
    let floor = -problem.max_abs_potential()? - 10.0;
    let (deep, lambda_lo, deep_brackets, deep_tangential) = deep_roots(problem, floor, opts)?;
    let p_max = problem.p1().max(problem.p2());
    let q_top = problem.max_abs_potential()?;
    let mut s_hi = p_max.sqrt() * (asymptotic_s(problem, count + 1) + 2.0) + q_top.sqrt();
    let mut lo = floor;
    let mut hi = s_hi * s_hi;
    let mut roots = deep;
    let mut warnings: Vec<String> = deep_tangential
        .iter()
        .map(|t| format!("suspected tangential zero of Omega near lambda = {t}"))
        .collect();
    let mut brackets_found = deep_brackets;
    loop {
        let scan = scan_brackets_with(problem, lo, hi, 2, opts)?;
        brackets_found += scan.brackets.len();
        for t in &scan.suspected_tangential {
            warnings.push(format!("suspected tangential zero of Omega near lambda = {t}"));
        }
        roots.extend(refine_all(problem, &scan.brackets, opts)?);
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|a, b| (*a - *b).abs() <= opts.refine_tol * a.abs().max(1.0));
        if roots.len() >= count {
            break;
        }
        if hi >= opts.lambda_hi_limit {
            return Err(SolverError::ScanExhausted {
                found: roots.len(),
                wanted: count,
                lambda_hi: hi,
            });
        }
        lo = hi;
        s_hi *= 2.0;
        hi = (s_hi * s_hi).min(opts.lambda_hi_limit);
    }
    roots.truncate(count);
    Ok(RootSearch {
        roots,
        scan: ScanMetadata {
            lambda_lo,
            lambda_hi: hi,
            s_step: s_step(problem, opts),
            lambda_step: opts.negative_lambda_step,
            brackets_found,
        },
        warnings,
    })
}

pub fn compute_spectrum(problem: &TwoIntervalProblem, count: usize) -> Result<Spectrum> {
    compute_spectrum_with(problem, count, &SolverOptions::default())
}

pub fn compute_spectrum_with(
    problem: &TwoIntervalProblem,
    count: usize,
    opts: &SolverOptions,
) -> Result<Spectrum> {
    if count == 0 {
        return Err(SolverError::InvalidArgument("count must be at least 1".into()));
    }
    problem.ensure_valid()?;
    let zero_tol = opts.omega_zero_tol * problem.omega_scale();
    let omega_at_zero = omega_unchecked(problem, 0.0)?;
    if omega_at_zero.abs() >= zero_tol {
        return spectrum_of(problem, count, 0.0, opts);
    }

    // λ = 0 is an eigenvalue: move it off zero by half the distance to the
    // nearest other root.
    let search = find_roots(problem, count + 1, opts)?;
    let mut by_distance = search.roots.clone();
    by_distance.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let nearest_other = by_distance
        .get(1)
        .copied()
        .ok_or(SolverError::ScanExhausted {
            found: search.roots.len(),
            wanted: 2,
            lambda_hi: search.scan.lambda_hi,
        })?;
    let shift = 0.5 * nearest_other;
    let shifted = problem.clone().with_potential_shift(shift);
    let check = omega_unchecked(&shifted, 0.0)?;
    if check.abs() < zero_tol {
        return Err(SolverError::NearSpectrum {
            lambda: shift,
            omega: check,
        });
    }
    let mut spectrum = spectrum_of(&shifted, count, shift, opts)?;
    spectrum.warnings.insert(
        0,
        format!("lambda = 0 is an eigenvalue (|Omega(0)| = {:e}); applied shift {shift}", omega_at_zero.abs()),
    );
    Ok(spectrum)
}

fn spectrum_of(
    problem: &TwoIntervalProblem,
    count: usize,
    shift: f64,
    opts: &SolverOptions,
) -> Result<Spectrum> {
    let search = find_roots(problem, count, opts)?;
    let roots = &search.roots;
    let mut eigenpairs = opts.execution.try_map(roots.len(), |i| {
        normalize_unchecked(problem, roots[i], opts.norm_floor)
    })?;
    for (n, e) in eigenpairs.iter_mut().enumerate() {
        e.n = n;
    }
    let mut warnings = search.warnings;
    for &lambda in roots {
        let need = resolving_grid_steps(problem, lambda)?;
        if need > problem.grid_steps() {
            warnings.push(format!(
                "eigenfunction at lambda = {} decays faster than the grid resolves; \
                 inner products need about {need} grid steps",
                lambda + shift
            ));
        }
    }
    let mut scan = search.scan;
    scan.lambda_lo += shift;
    scan.lambda_hi += shift;
    Ok(Spectrum {
        eigenpairs,
        shift,
        scan,
        warnings,
    })
}

/// Grid steps per subinterval at which Simpson's rule integrates the square
/// of a solution at `lambda` to about 1e-6 relative accuracy. Only
/// eigenvalues below the potential need more than the current grid:
/// oscillating solutions integrate far better than the error bound says.
pub fn resolving_grid_steps(problem: &TwoIntervalProblem, lambda: f64) -> Result<usize> {
    let q = problem.max_abs_potential()?;
    if lambda >= -q {
        return Ok(problem.grid_steps());
    }
    let p_min = problem.p1().min(problem.p2());
    let rate = ((q - lambda) / p_min).sqrt();
    // relative error of Simpson on exp(2 rate x) is about (2 rate h)^4 / 180
    let h = 0.5 * (180.0e-6f64).powf(0.25) / rate;
    let steps = (std::f64::consts::PI / h).ceil() as usize;
    Ok(problem.grid_steps().max(steps + steps % 2))
}
