use std::io::Write;
use std::process::{Command, Output};

use colorcomp::enumeration::{ColoredComposition, MatrixComposition};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colorcomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_and_total() {
    assert_eq!(
        stdout(&["count", "--family", "catalan", "--n", "3"]),
        "10\n"
    );
    assert_eq!(
        stdout(&["total", "--family", "catalan", "--n", "3"]),
        "10\n"
    );
    assert_eq!(
        stdout(&["count", "--family", "constant", "--p", "1", "--n", "0"]),
        "1\n"
    );
    assert_eq!(
        stdout(&["count", "--family", "matrix", "--k-rows", "2", "--n", "2"]),
        "7\n"
    );
    let json = stdout(&[
        "count", "--family", "catalan", "--n", "4", "--k", "2", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["count"], "14");
}

#[test]
fn oracles_agree_pairwise() {
    for family in [
        &["--family", "catalan"][..],
        &["--family", "binom_col", "--q", "2"][..],
        &["--family", "constant_shifted", "--p", "3", "--m", "2"][..],
        &["--family", "matrix", "--k-rows", "3"][..],
    ] {
        for n in ["0", "1", "6", "9"] {
            for k in [None, Some("0"), Some("3"), Some("12")] {
                let mut answers = Vec::new();
                for oracle in ["dp", "enum", "series", "closed"] {
                    let mut args = vec!["count"];
                    args.extend_from_slice(family);
                    args.extend(["--n", n, "--oracle", oracle]);
                    if let Some(k) = k {
                        args.extend(["--k", k]);
                    }
                    let out = run(&args);
                    if oracle == "closed" && !out.status.success() {
                        assert_eq!(out.status.code(), Some(2));
                        continue;
                    }
                    assert!(out.status.success(), "{args:?}");
                    answers.push(String::from_utf8(out.stdout).unwrap());
                }
                assert!(
                    answers.windows(2).all(|w| w[0] == w[1]),
                    "{family:?} n={n} k={k:?}: {answers:?}"
                );
            }
        }
    }
}

#[test]
fn table_formats() {
    let text = stdout(&["table", "--family", "catalan", "--n-max", "4"]);
    let last: Vec<&str> = text.lines().last().unwrap().split_whitespace().collect();
    assert_eq!(last, ["4", "14", "14", "6", "1", "35"]);
    let text = stdout(&["table", "--family", "constant", "--p", "1", "--n-max", "3"]);
    let last: Vec<&str> = text.lines().last().unwrap().split_whitespace().collect();
    assert_eq!(last, ["3", "1", "2", "1", "4"]);
    let text = stdout(&[
        "table",
        "--family",
        "exponential",
        "--p",
        "3",
        "--n-max",
        "1",
    ]);
    assert_eq!(text.lines().count(), 2);
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .split_whitespace()
        .eq(["1", "1", "1"]));
    let csv = stdout(&[
        "table", "--family", "catalan", "--n-max", "3", "--format", "csv",
    ]);
    assert_eq!(csv, "n,k=1,k=2,k=3,total\n1,1,,,1\n2,2,1,,3\n3,5,4,1,10\n");
}

#[test]
fn enumerate_lines() {
    let out = stdout(&["enumerate", "--family", "constant", "--p", "1", "--n", "3"]);
    assert_eq!(out.lines().count(), 4);
    let first: ColoredComposition = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(first.parts, vec![(3, 1)]);
    assert_eq!(
        stdout(&["enumerate", "--family", "catalan", "--n", "0"]),
        "{\"parts\":[]}\n"
    );
    let out = stdout(&["enumerate", "--family", "catalan", "--n", "2"]);
    assert_eq!(
        out,
        "{\"parts\":[[2,1]]}\n{\"parts\":[[2,2]]}\n{\"parts\":[[1,1],[1,1]]}\n"
    );
    let out = stdout(&[
        "enumerate",
        "--family",
        "catalan",
        "--n",
        "6",
        "--limit",
        "5",
    ]);
    assert_eq!(out.lines().count(), 5);
    let out = stdout(&[
        "enumerate",
        "--family",
        "matrix",
        "--k-rows",
        "2",
        "--n",
        "2",
        "--as-matrix",
    ]);
    let items: Vec<MatrixComposition> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(items.len(), 7);
}

#[test]
fn closed_and_convolution() {
    assert_eq!(
        stdout(&[
            "closed",
            "--family",
            "binom_row",
            "--p",
            "2",
            "--n",
            "4",
            "--k",
            "2"
        ]),
        "6\n"
    );
    assert_eq!(stdout(&["closed", "--convolution", "--n", "3"]), "5\n");
    assert_eq!(
        stdout(&["closed", "--convolution", "--n", "3", "--bound", "paper"]),
        "3\n"
    );
    let out = run(&["closed", "--family", "matrix", "--k-rows", "2", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn recurrence_views() {
    assert_eq!(
        stdout(&["recurrence", "--p", "1", "--q", "1", "--show", "coeffs"]),
        "[-1, 3]\norder: 2\n"
    );
    assert!(
        stdout(&["recurrence", "--p", "1", "--q", "0", "--show", "coeffs"]).starts_with("[2]\n")
    );
    let out = stdout(&[
        "recurrence",
        "--p",
        "2",
        "--q",
        "3",
        "--show",
        "verify",
        "--n-hi",
        "40",
    ]);
    assert!(out.ends_with("holds for 2 <= n <= 40\n"), "{out}");
    let tri = stdout(&["recurrence", "--p", "1", "--q", "1", "--show", "triangle"]);
    assert_eq!(tri, "j=0: -1 1\nj=1: -1 -2 1\nj=2: 0 1 -3 1\n");
}

#[test]
fn verify_selection() {
    let out = stdout(&["verify", "--only", "kb", "--n-max", "12"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["suite"] == "kb"));
    let out = run(&["verify", "--only", "final-corollary", "--bound", "paper"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["expected_failures"], 14);
    let n3 = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "n=3")
        .unwrap();
    assert_eq!(n3["status"], "expected-failure");
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["count", "--family", "constant", "--n", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["count", "--family", "nope", "--n", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["count", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["enumerate", "--family", "constant", "--p", "1", "--n", "30"])
            .status
            .code(),
        Some(3)
    );
    let capped = Command::new(env!("CARGO_BIN_EXE_colorcomp"))
        .args(["table", "--family", "catalan", "--n-max", "50"])
        .env("COLORCOMP_MAX_N", "20")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    let capped = Command::new(env!("CARGO_BIN_EXE_colorcomp"))
        .args(["enumerate", "--family", "catalan", "--n", "6"])
        .env("COLORCOMP_ENUM_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn custom_sequence_files() {
    let dir = std::env::temp_dir().join(format!("colorcomp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("b.json");
    std::fs::File::create(&json)
        .unwrap()
        .write_all(b"[2, 1, 1, 1, 1, 1]")
        .unwrap();
    let text = dir.join("b.txt");
    std::fs::File::create(&text)
        .unwrap()
        .write_all(b"# two ones\n2 1 1\n1 1 1\n")
        .unwrap();
    for path in [&json, &text] {
        let p = path.to_str().unwrap();
        // b = (2, 1, 1, ...): C(3) = 2*C(2) + C(1) + C(0) = 2*5 + 2 + 1
        assert_eq!(
            stdout(&["count", "--family", "custom", "--b-file", p, "--n", "3"]),
            "13\n"
        );
    }
    let out = run(&["count", "--family", "custom", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--b-file"));
    std::fs::remove_dir_all(&dir).unwrap();
}
