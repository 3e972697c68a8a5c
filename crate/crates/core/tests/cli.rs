use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run_env(args: &[&str], env: Option<&str>, stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_isocrystal-lab"));
    cmd.args(args).env_remove("ISOLAB_PRECISION");
    if let Some(n) = env {
        cmd.env("ISOLAB_PRECISION", n);
    }
    cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn run(args: &[&str]) -> Output {
    run_env(args, None, None)
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn worked_examples() {
    assert_eq!(ok(&["np", "dim", "--pairs", "2*(1,0)+(2,1)+(1,5)"]).trim(), "22");
    assert_eq!(ok(&["np", "dim", "--pairs", "(1,1)"]).trim(), "0");
    assert_eq!(
        ok(&["np", "sdim", "--pairs", "(5,1)+(2,1)+2*(1,1)+(1,2)+(1,5)"]).trim(),
        "48"
    );
    let chain = json(&["poset", "chain", "--h", "7", "--d", "3", "--from", "iso", "--to", "ord"]);
    assert_eq!(chain["length"], 9);
    assert_eq!(chain["chain"].as_array().unwrap().len(), 10);
}

#[test]
fn every_subcommand_runs() {
    let cases: &[&[&str]] = &[
        &["np", "construct", "--pairs", "(1,2)"],
        &["np", "compare", "--a", "(1,1)", "--b", "(1,0)+(0,1)"],
        &["np", "dual", "--pairs", "(2,1)"],
        &["np", "p-rank", "--pairs", "2*(1,0)+(0,1)"],
        &["np-poly", "--coeffs", "1,0,-5,-125", "--p", "5"],
        &["weil", "verify", "--poly", "1,0,2", "--p", "2", "--n", "1"],
        &["weil", "classify", "--beta", "1", "--p", "3", "--n", "1"],
        &["witt", "ghost", "--coords", "1,1"],
        &["witt", "ghost", "--check", "20", "--seed", "7"],
        &[
            "witt",
            "ops",
            "--op",
            "mul",
            "--a",
            "1;1",
            "--b",
            "2",
            "--p",
            "3",
            "--m",
            "2",
            "--precision",
            "3",
        ],
        &["cartier", "mul", "--a", "V", "--b", "F", "--p", "3"],
        &["cartier", "act", "--elem", "V<2>", "--x", "1", "--p", "3"],
        &["cartier", "artin-hasse", "--degree", "8"],
        &["dieudonne", "gmn", "--pair", "1,2"],
        &["dieudonne", "a-number", "--pair", "2,3", "--precision", "8"],
        &["dieudonne", "dual", "--pair", "1,2"],
        &["dieudonne", "np-display", "--pair", "2,3"],
        &["dieudonne", "np-sigma-trivial", "--matrix", "0,2;1,0"],
        &["dieudonne", "serre-tate-torsion", "--exponents", "1,2"],
        &[
            "semimod",
            "normalize",
            "--pair",
            "2,3",
            "--elements",
            "5",
            "--tail",
            "7",
        ],
        &["semimod", "dual", "--pair", "3,4", "--heads", "0,3,4"],
        &["semimod", "enumerate", "--pair", "3,4"],
        &["semimod", "from-jumps", "--pair", "2,3", "--jumps", "0,2"],
        &["poset", "build", "--h", "4", "--d", "2", "--symmetric"],
        &["poset", "witness", "--beta", "2*(1,1)", "--gamma", "2*(1,0)+2*(0,1)"],
    ];
    for args in cases {
        let out = ok(args);
        serde_json::from_str::<Value>(&out).unwrap_or_else(|e| panic!("{args:?} printed non-JSON {out:?}: {e}"));
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["poset", "dot", "--h", "6", "--d", "3"][..],
        &["witt", "ghost", "--check", "50", "--seed", "3", "--p", "3"],
        &["semimod", "enumerate", "--pair", "4,5"],
    ] {
        assert_eq!(ok(args), ok(args));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["nosuch"]), 64);
    assert_eq!(code(&["np", "dim", "--bogus", "1"]), 64);
    assert_eq!(code(&[]), 64);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["np", "dim", "--pairs", "(2,2)"]), 2);
    assert_eq!(code(&["np", "sdim", "--pairs", "(2,1)"]), 2);
    assert_eq!(code(&["np", "dim", "--pairs", "(1,1)", "--p", "4"]), 2);
    assert_eq!(code(&["dieudonne", "gmn", "--pair", "1,2", "--precision", "3"]), 3);
    assert_eq!(code(&["np", "dim", "--input", "{bad"]), 2);
    assert_eq!(code(&["np", "dim", "--input", "[1]"]), 2);
    let out = run(&["np", "dim", "--pairs", "(2,2)"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn precision_from_environment() {
    let args = ["dieudonne", "gmn", "--pair", "1,2"];
    assert_eq!(run_env(&args, Some("3"), None).status.code(), Some(3));
    assert_eq!(run_env(&args, Some("6"), None).status.code(), Some(0));
    // The flag wins over the environment.
    assert_eq!(
        run_env(
            &["dieudonne", "gmn", "--pair", "1,2", "--precision", "6"],
            Some("3"),
            None
        )
        .status
        .code(),
        Some(0)
    );
    assert_eq!(run_env(&args, Some("x"), None).status.code(), Some(2));
}

#[test]
fn input_from_stdin_file_and_inline() {
    let expected = ok(&["np", "construct", "--pairs", "(2,1)+(1,2)"]);
    let payload = r#"{"pairs": "(2,1)+(1,2)"}"#;
    let out = run_env(&["np", "construct", "--input", "-"], None, Some(payload));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);
    assert_eq!(ok(&["np", "construct", "--input", payload]), expected);
    let path = std::env::temp_dir().join(format!("isolab-cli-{}.json", std::process::id()));
    std::fs::write(&path, payload).unwrap();
    assert_eq!(ok(&["np", "construct", "--input", path.to_str().unwrap()]), expected);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn emitted_json_is_accepted_back() {
    let cases: &[&[&str]] = &[
        &["np", "construct", "--pairs", "2*(1,0)+(2,1)"],
        &["np", "compare", "--a", "(1,1)", "--b", "(1,0)+(0,1)"],
        &["weil", "classify", "--poly", "1,0,2", "--p", "2", "--n", "1"],
        &["semimod", "dual", "--pair", "3,4", "--heads", "0,3,4"],
        &["dieudonne", "gmn", "--pair", "2,3", "--p", "3"],
        &["poset", "build", "--h", "4", "--d", "2"],
    ];
    for args in cases {
        let first = ok(args);
        let replay = ok(&[&args[..2], &["--input", first.trim()]].concat());
        assert_eq!(replay, first, "{args:?}");
    }
    // A Cartier product is a valid operand of the action.
    let prod = ok(&["cartier", "mul", "--a", "V", "--b", "<2>F", "--p", "3", "--m", "2"]);
    let direct = json(&[
        "cartier", "act", "--elem", "V<2>F", "--x", "1;1", "--p", "3", "--m", "2",
    ]);
    let via = json(&[
        "cartier",
        "act",
        "--elem",
        prod.trim(),
        "--x",
        "1;1",
        "--p",
        "3",
        "--m",
        "2",
    ]);
    assert_eq!(direct["result"], via["result"]);
}

#[test]
fn text_and_dot_formats() {
    let text = ok(&["np", "construct", "--pairs", "(1,2)", "--format", "text"]);
    assert!(text.lines().any(|l| l == "breakpoints: (0,0), (3,1)"), "{text}");
    let dot = ok(&["poset", "build", "--h", "2", "--d", "1", "--format", "dot"]);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot, ok(&["poset", "dot", "--h", "2", "--d", "1"]));
    assert_eq!(code(&["np", "dim", "--pairs", "(1,1)", "--format", "dot"]), 2);
}
