//! End-to-end runs of the `glsv` binary.

use std::process::{Command, Output};

use glsv::parse::parse_lambda;
use glsv_core::exact::rat;
use glsv_core::solver::LambdaSpec;
use proptest::prelude::*;

fn glsv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glsv")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    glsv(args).status.code().expect("exit code")
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["ml", "--lmax", "3", "--order", "5"]), 0);
    assert_eq!(code(&["verify", "--suite", "parity", "--order", "6"]), 0);
    assert_eq!(code(&["ml", "--lmax", "5", "--order", "3"]), 2);
    assert_eq!(code(&["ml", "--lambda", "[0, 1]"]), 2);
    assert_eq!(code(&["ml", "--lambda", "[1/0]"]), 2);
    assert_eq!(code(&["ml", "--order", "0"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["verify", "--suite", "nonsense"]), 2);
    assert_eq!(code(&["pmn", "--m", "0", "--n", "1"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn zero_lambda2_message() {
    let out = glsv(&["ml", "--lambda", "[0, 1]"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("λ₂ must be nonzero"));
}

#[test]
fn help_documents_defaults() {
    let out = glsv(&["--help"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("--order 10"));
    assert!(text.contains("min(order, 6)"));
}

#[test]
fn json_is_deterministic() {
    for args in [
        &["ml", "--lmax", "6", "--order", "10", "--format", "json"][..],
        &["verify", "--suite", "all", "--order", "8"][..],
        &["mu", "--lambda", "[1, -1/3, 2/7]", "--format", "json"][..],
    ] {
        let a = glsv(args);
        let b = glsv(args);
        assert!(a.status.success(), "{args:?}");
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn verdict_documents_are_json_lines() {
    let out = glsv(&["verify", "--suite", "oracle", "--order", "8"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], serde_json::Value::Bool(true), "{line}");
        assert!(v["check"].is_string());
    }
    assert!(String::from_utf8_lossy(&out.stderr).contains("all checks passed"));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("glsv-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p.txt");
    let out = glsv(&["pmn", "--m", "1", "--n", "2", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "-2*u^-1 + 6 - 6*u + 2*u^2\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn solve_and_trees_agree() {
    let solve = glsv(&["solve", "--lambda", "geom", "--order", "4"]);
    let text = String::from_utf8(solve.stdout).unwrap();
    assert!(text.contains("[t^4] H = k + 5*k^2 + 5*k^3"), "{text}");
    let trees = glsv(&["trees", "--kind", "ordered", "--n", "4"]);
    assert_eq!(String::from_utf8(trees.stdout).unwrap(), "c(4,0) = 0\nc(4,1) = 1\nc(4,2) = 5\nc(4,3) = 5\n");
}

fn arb_rational() -> impl Strategy<Value = glsv_core::Rational> {
    (-50i64..=50, 1i64..=40).prop_map(|(n, d)| rat(n, d))
}

fn arb_spec() -> impl Strategy<Value = LambdaSpec> {
    prop_oneof![
        Just(LambdaSpec::gls()),
        Just(LambdaSpec::exp()),
        Just(LambdaSpec::geom()),
        (arb_rational().prop_filter("λ₂ ≠ 0", |r| *r != rat(0, 1)), prop::collection::vec(arb_rational(), 0..8)).prop_map(
            |(l2, rest)| {
                let mut c = vec![l2];
                c.extend(rest);
                LambdaSpec::explicit(c).unwrap()
            }
        ),
    ]
}

proptest! {
    #[test]
    fn lambda_spec_round_trips(spec in arb_spec()) {
        prop_assert_eq!(parse_lambda(&spec.to_string()), Ok(spec));
    }
}
