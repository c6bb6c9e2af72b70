use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use slt_core::config::load_problem;
use slt_core::expansion::{check_btc, coefficients_with, synthesize};
use slt_core::green::{resolvent_quadrature, resolvent_series, GreenKernel};
use slt_core::model::ode_residual;
use slt_core::spectrum::compute_spectrum_with;
use slt_core::verify::{run_fixture, SUITE_FIXTURES};
use slt_core::{Execution, Expression, FullTrace, Point, SolverOptions, TwoIntervalProblem};

/// Eigenvalues, eigenfunctions, Green kernels and eigenfunction expansions
/// for Sturm-Liouville problems on [-π, 0) ∪ (0, π] with transmission
/// conditions at 0.
#[derive(Debug, Parser)]
#[command(name = "slt", version)]
struct Cli {
    /// Problem file (TOML).
    #[arg(long, global = true)]
    problem: Option<PathBuf>,

    /// Override the number of grid steps per subinterval (even, >= 4).
    #[arg(long, global = true)]
    grid: Option<usize>,

    /// Write results here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Run every computation on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// First eigenvalues with their norming constants.
    Spectrum {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Normalized eigenfunction number `index` (from 0).
    Eigenfunction {
        #[arg(long)]
        index: usize,
        #[command(flatten)]
        samples: Samples,
    },
    /// Green kernel G(x, ξ; λ) on a sample grid.
    Green {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[command(flatten)]
        samples: Samples,
    },
    /// Solve -p u'' + (q - λ) u = f with all boundary and transmission conditions.
    Resolvent {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, value_enum, default_value_t = Method::Quadrature)]
        method: Method,
        /// Series terms (series method only).
        #[arg(long, default_value_t = 200)]
        terms: usize,
        #[command(flatten)]
        samples: Samples,
    },
    /// Fourier coefficients of f in the eigenfunction basis.
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value_t = 20)]
        terms: usize,
        /// Append `# norm2=… parseval_gap=…`.
        #[arg(long)]
        parseval: bool,
        /// Also emit `x,f,S_N` at M points per subinterval.
        #[arg(long, value_name = "M")]
        reconstruct: Option<usize>,
    },
    /// Run the property suites on built-in fixtures.
    Verify {
        #[arg(long, default_value = "all")]
        fixture: String,
    },
}

#[derive(Debug, Args)]
struct Samples {
    /// Points per subinterval, both ends included.
    #[arg(long, default_value_t = 65)]
    samples: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Quadrature,
    Series,
}

enum Failure {
    Usage(String),
    Compute(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<slt_core::SolverError> for Failure {
    fn from(e: slt_core::SolverError) -> Self {
        Failure::Compute(e.into())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("SLT_THREADS") else {
        return Ok(());
    };
    let n: usize = match value.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => return usage(format!("SLT_THREADS must be a positive integer, got `{value}`")),
    };
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Compute(anyhow!("thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn parse_expression(source: &str) -> Result<Expression, Failure> {
    source
        .parse()
        .map_err(|e| Failure::Usage(format!("--f `{source}`: {e}")))
}

fn validate(cli: &Cli) -> Result<(), Failure> {
    if let Some(g) = cli.grid {
        if g < 4 || !g.is_multiple_of(2) {
            return usage(format!("--grid must be even and at least 4, got {g}"));
        }
    }
    let samples = match &cli.command {
        Command::Eigenfunction { samples, .. }
        | Command::Green { samples, .. }
        | Command::Resolvent { samples, .. } => Some(samples.samples),
        Command::Expand { reconstruct, .. } => *reconstruct,
        _ => None,
    };
    if samples.is_some_and(|m| m < 2) {
        return usage("at least 2 samples per subinterval are needed");
    }
    match &cli.command {
        Command::Spectrum { count: 0, .. } => usage("--count must be at least 1"),
        Command::Resolvent { lambda, terms, method, .. } => {
            if !lambda.is_finite() {
                return usage("--lambda must be finite");
            }
            if matches!(method, Method::Series) && *terms == 0 {
                return usage("--terms must be at least 1");
            }
            Ok(())
        }
        Command::Green { lambda, .. } if !lambda.is_finite() => usage("--lambda must be finite"),
        Command::Expand { terms: 0, .. } => usage("--terms must be at least 1"),
        Command::Verify { fixture } => {
            if fixture != "all" && slt_core::fixtures::by_name(fixture).is_none() {
                return usage(format!(
                    "unknown fixture `{fixture}` (expected all or one of {})",
                    slt_core::fixtures::NAMES.join(", ")
                ));
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

fn problem(cli: &Cli) -> Result<TwoIntervalProblem, Failure> {
    let Some(path) = &cli.problem else {
        return usage("this subcommand needs --problem FILE");
    };
    let mut p = load_problem(path)?;
    if let Some(g) = cli.grid {
        p = p.with_grid_steps(g);
        p.ensure_valid()?;
    }
    Ok(p)
}

fn run(cli: Cli) -> Result<(), Failure> {
    validate(&cli)?;
    configure_threads()?;
    let opts = SolverOptions {
        execution: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
        ..SolverOptions::default()
    };
    let mut out = String::new();
    let mut failed = false;
    match &cli.command {
        Command::Spectrum { count, format } => {
            let p = problem(&cli)?;
            let s = compute_spectrum_with(&p, *count, &opts)?;
            for w in &s.warnings {
                eprintln!("warning: {w}");
            }
            out = match format {
                Format::Csv => s.to_csv(),
                Format::Json => s.to_json() + "\n",
            };
        }
        Command::Eigenfunction { index, samples } => {
            let p = problem(&cli)?;
            let s = compute_spectrum_with(&p, index + 1, &opts)?;
            let e = &s.eigenpairs[*index];
            let _ = writeln!(out, "# n={} lambda={} norm_constant={}", e.n, num(e.lambda), num(e.norm_constant));
            out.push_str("x,y,dy\n");
            for pt in Point::uniform(samples.samples) {
                let (y, dy) = e.eigenfunction.eval(pt);
                let _ = writeln!(out, "{pt},{},{}", num(y), num(dy));
            }
        }
        Command::Green { lambda, samples } => {
            let p = problem(&cli)?;
            let k = GreenKernel::new(&p, *lambda)?;
            let pts = Point::uniform(samples.samples);
            out.push_str("x,xi,G\n");
            for &x in &pts {
                for &xi in &pts {
                    let _ = writeln!(out, "{x},{xi},{}", num(k.eval(x, xi).value));
                }
            }
        }
        Command::Resolvent {
            lambda,
            f,
            method,
            terms,
            samples,
        } => {
            let f = parse_expression(f)?;
            let p = problem(&cli)?;
            let u = match method {
                Method::Quadrature => resolvent_quadrature(&p, *lambda, &f)?,
                Method::Series => {
                    let s = compute_spectrum_with(&p, *terms, &opts)?;
                    resolvent_series(&p, &s, &f, *lambda, *terms)?
                }
            };
            let ft = FullTrace::from_expression(p.grid_steps(), &f)?;
            let residual = ode_residual(&p, &u, *lambda, Some(&ft))?;
            out.push_str("x,u\n");
            for pt in Point::uniform(samples.samples) {
                let _ = writeln!(out, "{pt},{}", num(u.eval(pt).0));
            }
            let _ = writeln!(out, "# max_residual={residual:e}");
        }
        Command::Expand {
            f,
            terms,
            parseval,
            reconstruct,
        } => {
            let f = parse_expression(f)?;
            let p = problem(&cli)?;
            let s = compute_spectrum_with(&p, *terms, &opts)?;
            let c = coefficients_with(&p, &s, &f, *terms, opts.execution)?;
            let ft = FullTrace::from_expression(p.grid_steps(), &f)?;
            let btc = check_btc(&p, &ft)?.max();
            // boundary/transmission conditions decide between uniform and
            // mean-square convergence of the partial sums
            let regime = if btc <= 1e-6 { "uniform" } else { "mean-square" };
            eprintln!("f: max boundary/transmission residual {btc:e}; expect {regime} convergence");
            out.push_str("n,c_n\n");
            for (n, v) in c.values.iter().enumerate() {
                let _ = writeln!(out, "{n},{}", num(*v));
            }
            if *parseval {
                let _ = writeln!(out, "# norm2={} parseval_gap={}", num(c.norm2), num(c.gap(*terms)));
            }
            if let Some(m) = reconstruct {
                let sum = synthesize(&s, &c.values)?;
                out.push_str("x,f,S_N\n");
                for pt in Point::uniform(*m) {
                    let _ = writeln!(out, "{pt},{},{}", num(ft.eval(pt).0), num(sum.eval(pt).0));
                }
            }
        }
        Command::Verify { fixture } => {
            let names: Vec<&str> = if fixture == "all" {
                SUITE_FIXTURES.to_vec()
            } else {
                vec![fixture.as_str()]
            };
            for name in names {
                for r in run_fixture(name, &opts)? {
                    failed |= !r.passed;
                    let _ = writeln!(out, "{r}");
                }
            }
        }
    }
    emit(&cli, &out)?;
    if failed {
        return Err(Failure::Compute(anyhow!("some properties failed")));
    }
    Ok(())
}

/// Shortest round-trip text, with exponent form for very small or large
/// magnitudes and without negative zero.
fn num(v: f64) -> String {
    let v = v + 0.0;
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::Compute),
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("writing to standard output")
            .map_err(Failure::Compute),
    }
}
