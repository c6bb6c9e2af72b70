use std::path::PathBuf;
use std::process::{Command, Output};

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../problems")
        .join(format!("{name}.toml"))
}

fn slt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slt"))
        .args(args)
        .env("SLT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn spectrum_csv_on_c0() {
    let c0 = problem("c0");
    let o = slt(&["spectrum", "--problem", c0.to_str().unwrap(), "--count", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,lambda,s,norm_constant"));
    let lambdas: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    for (k, v) in lambdas.iter().enumerate() {
        let want = ((k + 1) as f64 / 2.0).powi(2);
        assert!((v - want).abs() < 1e-6, "{v} vs {want}");
    }
    assert_eq!(lambdas.len(), 4);
}

#[test]
fn spectrum_json_reports_shift() {
    let p = problem("zero-mode");
    let o = slt(&["spectrum", "--problem", p.to_str().unwrap(), "--count", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\"shift\": 0.375"), "{text}");
    assert!(stderr(&o).contains("applied shift"));
}

#[test]
fn resolvent_on_an_eigenvalue_fails() {
    let c0 = problem("c0");
    let o = slt(&["resolvent", "--problem", c0.to_str().unwrap(), "--lambda", "0.25", "--f", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("lambda is within tolerance of an eigenvalue"));
    assert!(o.stdout.is_empty());
}

#[test]
fn resolvent_quadrature_and_series() {
    let c0 = problem("c0");
    let c0 = c0.to_str().unwrap();
    let o = slt(&["resolvent", "--problem", c0, "--lambda", "0", "--f", "1", "--samples", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("x,u\n-3.141592653589793,0\n"), "{text}");
    assert!(text.contains("0-,4.9348022005"));
    let last = text.lines().last().unwrap();
    let r: f64 = last.strip_prefix("# max_residual=").unwrap().parse().unwrap();
    assert!(r < 1e-4);

    let o = slt(&[
        "resolvent", "--problem", c0, "--lambda", "-1.5", "--f", "sin(x+pi)", "--method", "series",
        "--terms", "4", "--samples", "5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // u = sin(x + π) / (1 + 1.5)
    for line in stdout(&o).lines().skip(1).filter(|l| !l.starts_with('#')) {
        let (x, u) = line.split_once(',').unwrap();
        let x: f64 = x.trim_end_matches(['-', '+']).parse().unwrap();
        let u: f64 = u.parse().unwrap();
        assert!((u - (x + std::f64::consts::PI).sin() / 2.5).abs() < 1e-6, "{line}");
    }
}

#[test]
fn green_csv() {
    let c0 = problem("c0");
    let o = slt(&["green", "--problem", c0.to_str().unwrap(), "--lambda", "0", "--samples", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 36);
    let at_zero = text.lines().find(|l| l.starts_with("0-,0-,")).unwrap();
    let g: f64 = at_zero.rsplit(',').next().unwrap().parse().unwrap();
    assert!((g + std::f64::consts::FRAC_PI_2).abs() < 1e-6);
}

#[test]
fn expand_with_parseval_and_reconstruction() {
    let c0 = problem("c0");
    let o = slt(&[
        "expand", "--problem", c0.to_str().unwrap(), "--f", "pi^2 - x^2", "--terms", "50",
        "--parseval", "--reconstruct", "5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("n,c_n\n0,18.0540666"));
    let comment = text.lines().find(|l| l.starts_with("# norm2=")).unwrap();
    let gap: f64 = comment.split("parseval_gap=").nth(1).unwrap().parse().unwrap();
    assert!((0.0..1e-4 * 326.38).contains(&gap));
    assert!(text.contains("x,f,S_N\n"));
    // vanishes at ±π and is continuous, so it satisfies every condition
    assert!(stderr(&o).contains("uniform"));

    let o = slt(&["expand", "--problem", c0.to_str().unwrap(), "--f", "x/abs(x)", "--terms", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("mean-square"));
}

#[test]
fn eigenfunction_samples() {
    let c1 = problem("c1");
    let o = slt(&["eigenfunction", "--problem", c1.to_str().unwrap(), "--index", "0", "--samples", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# n=0 lambda=0.25"));
    let value = |tag: &str| -> f64 {
        let line = text.lines().find(|l| l.starts_with(tag)).unwrap();
        line.split(',').nth(1).unwrap().parse().unwrap()
    };
    assert!((value("0+,") / value("0-,") - 2.0).abs() < 1e-6);
}

#[test]
fn verify_c0_passes() {
    let o = slt(&["verify", "--fixture", "c0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().count() >= 10);
    assert!(text.lines().all(|l| l.starts_with("PASS c0 ")));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(slt(&["spectrum", "--count", "3"]).status.code(), Some(2));
    let c0 = problem("c0");
    let c0 = c0.to_str().unwrap();
    assert_eq!(slt(&["spectrum", "--problem", c0, "--count", "0"]).status.code(), Some(2));
    assert_eq!(slt(&["spectrum", "--problem", c0, "--grid", "7"]).status.code(), Some(2));
    assert_eq!(slt(&["verify", "--fixture", "c9"]).status.code(), Some(2));
    assert_eq!(slt(&["expand", "--problem", c0, "--f", "2+"]).status.code(), Some(2));
    assert_eq!(slt(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bad_problem_file_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "p2 = 1.0\n").unwrap();
    let o = slt(&["spectrum", "--problem", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("p1"), "{}", stderr(&o));
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let c2 = problem("c2");
    let mut texts = Vec::new();
    for (i, extra) in [&[][..], &["--sequential"][..]].iter().enumerate() {
        let out = dir.path().join(format!("s{i}.csv"));
        let mut args = vec!["spectrum", "--problem", c2.to_str().unwrap(), "--count", "6", "-o"];
        args.push(out.to_str().unwrap());
        args.extend_from_slice(extra);
        let o = slt(&args);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        texts.push(std::fs::read_to_string(&out).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
}
