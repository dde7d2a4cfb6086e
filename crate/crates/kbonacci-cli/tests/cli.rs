//! End-to-end checks of the binary: output shapes and the exit-code contract
//! (0 pass, 1 verification failure, 2 usage/domain error).

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kbonacci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("kbonacci-cli-test-{}-{name}", std::process::id()))
}

const FIB_BFILE: &str = "0 0\n1 1\n2 1\n3 2\n4 3\n5 5\n6 8\n7 13\n8 21\n9 34\n";

#[test]
fn verify_symbolic_parametric_passes() {
    let output = run(&["verify-symbolic", "--parametric"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("row B: 2k - 2"), "{text}");
    assert!(text.contains("overall: PASS"), "{text}");
}

#[test]
fn verify_symbolic_concrete_passes() {
    let output = run(&["verify-symbolic", "--concrete", "--k", "2..6"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("concrete check: PASS"));
}

#[test]
fn verify_numeric_sweep_passes() {
    let output = run(&["verify-numeric", "--k", "2..6", "--m-max", "50"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("status: PASS"));
}

#[test]
fn verify_numeric_rejects_tiny_order() {
    let output = run(&["verify-numeric", "--k", "1..6"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn verify_constant_small_sweep_passes() {
    let output = run(&[
        "verify-constant",
        "--k",
        "2..4",
        "--random",
        "3",
        "--probes",
        "1..10",
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("status: PASS"));
}

#[test]
fn identity_latex_for_order_five() {
    let output = run(&["identity", "--k", "5", "--format", "latex"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains(r"\frac{1}{8}"), "{text}");
    assert!(text.contains("+ 3"), "{text}");
}

#[test]
fn seq_prints_bfile_style_lines() {
    let output = run(&["seq", "--k", "2", "--n", "8"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "0 0\n1 1\n2 1\n3 2\n4 3\n5 5\n6 8\n7 13\n");
}

#[test]
fn seq_accepts_custom_initial_conditions() {
    let output = run(&["seq", "--k", "2", "--n", "5", "--initial", "2,1"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "0 2\n1 1\n2 3\n3 4\n4 7\n");
}

#[test]
fn oeis_check_agreement_and_mismatch() {
    let path = temp_path("fib.txt");
    std::fs::write(&path, FIB_BFILE).unwrap();
    let path_str = path.to_str().unwrap();

    let ok = run(&[
        "oeis-check",
        "--k",
        "2",
        "--bfile",
        path_str,
        "--terms",
        "10",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("agreement on first 10 terms"));

    let bad = run(&[
        "oeis-check",
        "--k",
        "3",
        "--bfile",
        path_str,
        "--terms",
        "10",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("mismatch at index 1"));

    let short = run(&[
        "oeis-check",
        "--k",
        "2",
        "--bfile",
        path_str,
        "--terms",
        "99",
    ]);
    assert_eq!(short.status.code(), Some(2));

    std::fs::remove_file(&path).ok();
}

#[test]
fn oeis_check_against_vendored_tetranacci_bfile() {
    let path =
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../kbonacci/tests/fixtures/b000078.txt");
    let output = run(&[
        "oeis-check",
        "--k",
        "4",
        "--bfile",
        path.to_str().unwrap(),
        "--terms",
        "30",
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("agreement on first 30 terms"));
}

#[test]
fn out_flag_writes_json_report() {
    let path = temp_path("report.json");
    let path_str = path.to_str().unwrap();
    let output = run(&[
        "verify-numeric",
        "--k",
        "2..3",
        "--m-max",
        "5",
        "--out",
        path_str,
    ]);
    assert_eq!(output.status.code(), Some(0));
    let json = std::fs::read_to_string(&path).unwrap();
    assert!(json.contains("\"status\": \"pass\""), "{json}");
    assert!(json.contains("\"k_range\""), "{json}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn tables_offdiag_requires_order() {
    let output = run(&["tables", "--target", "offdiag"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["identity", "--k", "1"]).status.code(), Some(2));
    assert_eq!(run(&["seq", "--k", "3", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn identical_argv_gives_identical_stdout() {
    let first = run(&["verify-symbolic", "--concrete", "--k", "2..5"]);
    let second = run(&["verify-symbolic", "--concrete", "--k", "2..5"]);
    assert_eq!(first.stdout, second.stdout);
    let third = run(&["tables", "--target", "ledger-evaluated"]);
    let fourth = run(&["tables", "--target", "ledger-evaluated"]);
    assert_eq!(third.stdout, fourth.stdout);
}
