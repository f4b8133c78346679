//! End-to-end checks of the binary: exit codes, certificate stability, and
//! pipe composition against the file-based flows.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_stepup");

/// A 3-uniform coloring on [5] with one red triple per colex prefix stripe;
/// small enough that every verifier is instant.
const PHI5: &str = "coloring 3 5\n0 1 2\n0 3 4\n1 2 4\n";

fn tmp() -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).unwrap()
}

#[test]
fn piped_lift_matches_file_based_flow() {
    let dir = tmp();
    let phi = dir.join("phi5.txt");
    std::fs::write(&phi, PHI5).unwrap();

    let lifted = run(&["lift-coloring", phi.to_str().unwrap()]);
    assert!(lifted.status.success(), "{}", stderr(&lifted));
    let table = dir.join("lift32.txt");
    std::fs::write(&table, &lifted.stdout).unwrap();

    let from_file = run(&["verify", "red-density", table.to_str().unwrap(), "--p", "5"]);
    let from_pipe = run_stdin(&["verify", "red-density", "--p", "5"], &lifted.stdout);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    assert!(from_pipe.status.success(), "{}", stderr(&from_pipe));
    assert_eq!(from_file.stdout, from_pipe.stdout, "pipe and file certificates must be identical bytes");
    assert!(stdout(&from_file).contains("\"base_sha256\""));
}

#[test]
fn descriptor_pipe_matches_file_based_flow() {
    let dir = tmp();
    let base = dir.join("base5.hg");
    std::fs::write(&base, "hypergraph 4 5\n0 1 2 3\n0 1 2 4\n0 1 3 4\n0 2 3 4\n1 2 3 4\n").unwrap();

    let descriptor = run(&["lift-er", "5", base.to_str().unwrap()]);
    assert!(descriptor.status.success(), "{}", stderr(&descriptor));
    let file = dir.join("lift.desc");
    std::fs::write(&file, &descriptor.stdout).unwrap();

    // The descriptor names the base by the path lift-er was given, which is
    // absolute here, so stdin and file flows resolve the same base.
    let from_file = run(&["verify", "clique-free", file.to_str().unwrap(), "--t", "7"]);
    let from_pipe = run_stdin(&["verify", "clique-free", "--t", "7"], &descriptor.stdout);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    assert_eq!(from_file.stdout, from_pipe.stdout);
    assert!(stdout(&from_file).contains("\"lifted-hypergraph\""));
    assert!(stdout(&from_file).contains("\"ground\": 32"));
}

#[test]
fn same_seed_reruns_are_byte_identical() {
    let dir = tmp();
    let out1 = dir.join("a.txt");
    let out2 = dir.join("b.txt");
    let first = run(&["search-phi", "4", "4", "--seed", "9", "--out", out1.to_str().unwrap()]);
    let second = run(&["search-phi", "4", "4", "--seed", "9", "--out", out2.to_str().unwrap()]);
    assert!(first.status.success(), "{}", stderr(&first));
    assert_eq!(first.stdout, second.stdout, "same seed must reproduce the certificate");
    assert_eq!(std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());
    assert!(stdout(&first).contains("\"seed\": 9"));
}

#[test]
fn verdict_fail_still_prints_certificate() {
    let dir = tmp();
    let base = dir.join("complete.hg");
    std::fs::write(&base, "hypergraph 4 5\n0 1 2 3\n0 1 2 4\n0 1 3 4\n0 2 3 4\n1 2 3 4\n").unwrap();
    let out = run(&["verify", "clique-free", base.to_str().unwrap(), "--t", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\"verdict\": \"fail\""));
    assert!(stdout(&out).contains("\"clique\""));
}

#[test]
fn malformed_input_diagnoses_the_line() {
    let dir = tmp();
    let bad = dir.join("bad.hg");
    std::fs::write(&bad, "hypergraph 4 5\n0 1 2\n").unwrap();
    let out = run(&["verify", "clique-free", bad.to_str().unwrap(), "--t", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(stderr(&out).contains("line 2"), "stderr: {}", stderr(&out));
}

#[test]
fn alpha_of_the_empty_hypergraph_is_the_ground_size() {
    let out = run_stdin(&["verify", "alpha", "--s", "6"], b"hypergraph 5 12\n");
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("\"alpha\": 12"));
    assert!(stdout(&out).contains("\"exact\": true"));
}

#[test]
fn alpha_bound_controls_the_verdict() {
    let input = b"hypergraph 5 12\n";
    let pass = run_stdin(&["verify", "alpha", "--s", "6", "--max", "12"], input);
    assert_eq!(pass.status.code(), Some(0));
    let fail = run_stdin(&["verify", "alpha", "--s", "6", "--max", "11"], input);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("\"verdict\": \"fail\""));
}

#[test]
fn sample_scope_certificates_carry_the_seed() {
    let out = run_stdin(
        &["verify", "red-density", "--p", "5", "--lift-base", "--scope", "sample:77:500"],
        PHI5.as_bytes(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("\"seed\": 77"));
    assert!(stdout(&out).contains("\"count\": 500"));
}

#[test]
fn blue_clique_bound_splits_at_the_maximum() {
    // On the 32-vertex lift of PHI5 the largest all-blue clique sits between
    // the two probes; both directions must terminate quickly.
    let found = run_stdin(&["verify", "blue-clique", "--lift-base", "--max", "4"], PHI5.as_bytes());
    assert_eq!(found.status.code(), Some(1), "{}", stderr(&found));
    assert!(stdout(&found).contains("\"clique\""));
    let free = run_stdin(&["verify", "blue-clique", "--lift-base", "--max", "20"], PHI5.as_bytes());
    assert_eq!(free.status.code(), Some(0), "{}", stderr(&free));
}

#[test]
fn claims_scan_reports_applicable_counts() {
    let out = run(&["verify", "claims", "--which", "mono", "--arity", "6"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("\"applicable\": 146"));
    assert!(stdout(&out).contains("\"verdict\": \"pass\""));
}

#[test]
fn properties_scan_covers_each_listed_property() {
    let out = run(&["verify", "properties", "--N", "5", "--which", "A,B,C,D,G"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    for label in ["\"A\"", "\"B\"", "\"C\"", "\"D\"", "\"G\""] {
        assert!(text.contains(label), "missing {label} in {text}");
    }
    assert!(text.contains("\"verdict\": \"pass\""));
}

#[test]
fn oversized_property_scan_suggests_windows() {
    let out = run(&["verify", "properties", "--N", "10", "--which", "G"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("window"), "stderr: {}", stderr(&out));
    let windowed = run(&["verify", "properties", "--N", "10", "--which", "G", "--scope", "window:0:24"]);
    assert!(windowed.status.success(), "{}", stderr(&windowed));
}

#[test]
fn build_x_verdict_tracks_extrema_supply() {
    // Zigzag deltas 1,7,2,8,3,9,4,10,5,11,6: every interior position is an
    // extremum, enough for the arity-6 and general builds.
    let zig = b"0 2 130 134 390 398 910 926 1950 1982 4030 4094\n";
    let ok = run_stdin(&["build-x", "--kind", "k6"], zig);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert!(stdout(&ok).contains("\"vertices\""));
    // Powers of two climb through strictly increasing deltas: no extrema.
    let starved = run_stdin(&["build-x", "--kind", "general:7"], b"0 1 2 4 8 16 32 64 128 256 512 1024\n");
    assert_eq!(starved.status.code(), Some(1));
    assert!(stdout(&starved).contains("insufficient extrema"));
}

#[test]
fn thread_count_env_is_validated() {
    let out = Command::new(BIN)
        .env("STEPUP_THREADS", "zero")
        .args(["verify", "claims", "--which", "mono", "--arity", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("STEPUP_THREADS"));
    let ok = Command::new(BIN)
        .env("STEPUP_THREADS", "2")
        .args(["verify", "claims", "--which", "mono", "--arity", "6"])
        .output()
        .unwrap();
    assert!(ok.status.success());
}

#[test]
fn timings_flag_is_the_only_source_of_wall_time() {
    let plain = run_stdin(&["verify", "red-density", "--p", "5", "--lift-base"], PHI5.as_bytes());
    assert!(!stdout(&plain).contains("wall_ms"));
    let timed = run_stdin(&["verify", "red-density", "--p", "5", "--lift-base", "--timings"], PHI5.as_bytes());
    assert!(stdout(&timed).contains("\"wall_ms\""));
}
