//! End-to-end checks of the installed binary: exit codes, output layout,
//! config replay, and determinism across thread counts.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_agmean"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn constants_to_stdout() {
    let out = run(&["constants", "--p", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# tool: agmean "));
    assert!(text.contains("p,m_p,exp_m_p,clt_sigma"));
    assert_eq!(data_rows(&text).len(), 1);
}

#[test]
fn version_flag_works() {
    let out = run(&["--version"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("agmean"));
}

#[test]
fn exit_code_usage_and_domain() {
    // unknown subcommand: clap usage error
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    // malformed flag value
    assert_eq!(run(&["clt", "--n", "many"]).status.code(), Some(2));
    // domain rejection: theta outside (0, 1)
    let out = run(&["ldp", "--theta", "1.0", "--n", "5", "--reps", "100"]);
    assert_eq!(out.status.code(), Some(2));
    // p <= 0
    assert_eq!(run(&["constants", "--p", "-1"]).status.code(), Some(2));
}

#[test]
fn exit_code_io() {
    let out = run(&[
        "constants",
        "--out",
        "/nonexistent-dir-for-agmean-tests/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn identical_config_reruns_byte_identical() {
    let args = [
        "ldp", "--theta", "0.6", "--n-list", "5,10", "--reps", "500", "--estimator", "naive",
        "--seed", "42",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["clt", "--n", "300", "--reps", "600", "--seed", "11"];
    let mut one = bin();
    one.args(args).env("RAYON_NUM_THREADS", "1");
    let mut four = bin();
    four.args(args).env("RAYON_NUM_THREADS", "4");
    let a = one.output().unwrap();
    let b = four.output().unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_echo_replays_exactly() {
    let out = run(&[
        "rate-curve",
        "--p-list",
        "1,2",
        "--points",
        "7",
        "--theta-min",
        "0.2",
        "--theta-max",
        "0.8",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let echo = text
        .lines()
        .find_map(|l| l.strip_prefix("# config: "))
        .expect("config echo line");
    let seed = text
        .lines()
        .find_map(|l| l.strip_prefix("# seed: "))
        .expect("seed line");

    // feed the echoed key=value pairs back as a config file
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("replay.cfg");
    let mut lines: Vec<String> = echo.split(' ').map(|kv| kv.to_string()).collect();
    lines.push(format!("seed={seed}"));
    std::fs::write(&cfg, lines.join("\n")).unwrap();

    let replay = run(&["rate-curve", "--config", cfg.to_str().unwrap()]);
    assert!(replay.status.success());
    assert_eq!(out.stdout, replay.stdout);
}

#[test]
fn json_format_from_binary() {
    let out = run(&[
        "surface-vs-cone",
        "--p",
        "1",
        "--n-list",
        "3",
        "--reps",
        "10000",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["meta"]["subcommand"], "surface-vs-cone");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert!(rows[0]["cone_prob"].is_number());
    // p = 1: constant surface weight, gap collapses to zero
    assert!(rows[0]["gap"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn clt_default_shape_smoke() {
    // default a-grid at reduced size: 9 tail rows, ks in the header
    let out = run(&["clt", "--n", "150", "--reps", "200", "--seed", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# ks_distance: "));
    assert!(text.contains("# half_prob: "));
    assert_eq!(data_rows(&text).len(), 9);
}
