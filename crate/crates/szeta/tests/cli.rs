//! Black-box tests of the command-line binary: output contracts, exit
//! codes, configuration precedence, and run-to-run determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn table_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_100k.txt")
}

fn szeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_szeta"))
        .args(args)
        .env_remove("SZETA_ZEROS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

/// Pull a numeric JSON field out of a one-object output line.
fn json_field(text: &str, key: &str) -> f64 {
    let pat = format!("\"{key}\":");
    let at = text.find(&pat).unwrap_or_else(|| panic!("missing {key} in {text}"));
    let rest = &text[at + pat.len()..];
    let end = rest
        .find(|c: char| c == ',' || c == '}')
        .expect("terminated field");
    rest[..end].parse().expect("numeric field")
}

#[test]
fn eval_reports_value_at_two() {
    let table = table_path();
    let out = szeta(&["eval", "--s", "2+0i", "--table", table.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {:?}", out.stderr);
    let text = stdout(&out);
    let re = json_field(&text, "value_re");
    assert!((re - 0.0231049931).abs() < 1e-6, "value_re = {re}");
    assert!(json_field(&text, "value_im").abs() < 1e-12);
    assert!(text.contains("\"table_source\""));
    assert!(text.contains("\"height_ceiling\""));
}

#[test]
fn eval_at_the_pole_fails_cleanly() {
    let table = table_path();
    let out = szeta(&["eval", "--s", "1", "--table", table.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("Pole"), "stderr: {err}");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = szeta(&["eval", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_table_is_a_config_error() {
    let out = szeta(&["eval", "--s", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("Config"), "stderr: {err}");
}

#[test]
fn zeros_window_prints_first_ordinate() {
    let out = szeta(&["zeros", "--from", "10", "--to", "15", "--tol", "1e-8"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "14.13472514");
}

#[test]
fn csv_output_carries_table_header() {
    let table = table_path();
    let out = szeta(&[
        "eval",
        "--s",
        "2+0i",
        "--table",
        table.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().expect("header line");
    assert!(header.starts_with("# table="), "header: {header}");
    assert!(header.contains(" H="));
    assert_eq!(lines.next(), Some("value_re,value_im,abs_error,method"));
}

#[test]
fn flag_overrides_config_overrides_env() {
    let table = table_path();
    let dir = std::env::temp_dir().join("szeta-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("good.cfg");
    std::fs::write(&cfg, format!("zero_table={}\n", table.display())).unwrap();

    // config alone suffices
    let out = szeta(&["ingest", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {:?}", out.stderr);
    assert!(stdout(&out).contains("\"count\":100000"));

    // env alone suffices
    let out = Command::new(env!("CARGO_BIN_EXE_szeta"))
        .args(["ingest"])
        .env("SZETA_ZEROS", table.as_os_str())
        .output()
        .unwrap();
    assert!(out.status.success());

    // a bad env value is masked by the flag
    let out = Command::new(env!("CARGO_BIN_EXE_szeta"))
        .args(["ingest", "--table", table.to_str().unwrap()])
        .env("SZETA_ZEROS", "/no/such/file")
        .output()
        .unwrap();
    assert!(out.status.success());

    // a bad config value is masked by the flag too
    let bad = dir.join("bad.cfg");
    std::fs::write(&bad, "zero_table=/no/such/file\n").unwrap();
    let out = szeta(&[
        "ingest",
        "--config",
        bad.to_str().unwrap(),
        "--table",
        table.to_str().unwrap(),
    ]);
    assert!(out.status.success());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let table = table_path();
    let args = [
        "check",
        "--criteria",
        "13",
        "--table",
        table.to_str().unwrap(),
    ];
    let first = szeta(&args);
    let second = szeta(&args);
    assert!(first.status.success(), "stderr: {:?}", first.stderr);
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).contains("criterion 13"));

    let args = ["eval", "--s", "0.5+3i", "--table", table.to_str().unwrap()];
    let first = szeta(&args);
    let second = szeta(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}
