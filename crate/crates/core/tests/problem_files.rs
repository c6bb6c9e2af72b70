use std::path::PathBuf;

use slt_core::config::load_problem;
use slt_core::fixtures;
use slt_core::spectrum::compute_spectrum;

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../problems")
        .join(format!("{name}.toml"))
}

#[test]
fn shipped_files_match_fixtures() {
    for name in fixtures::NAMES {
        let from_file = load_problem(path(name)).unwrap();
        let built_in = fixtures::by_name(name).unwrap();
        assert_eq!(from_file.p1(), built_in.p1(), "{name}");
        assert_eq!(from_file.p2(), built_in.p2(), "{name}");
        assert!((from_file.alpha() - built_in.alpha()).abs() < 1e-15, "{name}");
        assert!((from_file.beta() - built_in.beta()).abs() < 1e-15, "{name}");
        assert_eq!(from_file.transmission(), built_in.transmission(), "{name}");
        assert_eq!(from_file.grid_steps(), built_in.grid_steps(), "{name}");
        for x in [-3.0, -1.0, 0.5, 2.5] {
            let side = if x < 0.0 { from_file.q_left() } else { from_file.q_right() };
            let other = if x < 0.0 { built_in.q_left() } else { built_in.q_right() };
            assert_eq!(side.eval(x).unwrap(), other.eval(x).unwrap(), "{name} q({x})");
        }
    }
}

#[test]
fn c0_file_spectrum() {
    let p = load_problem(path("c0")).unwrap();
    let s = compute_spectrum(&p, 4).unwrap();
    for (k, v) in s.eigenvalues().iter().enumerate() {
        assert!((v - ((k + 1) as f64 / 2.0).powi(2)).abs() < 1e-6);
    }
}
