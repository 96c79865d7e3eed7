//! End-to-end runs of the `isingff` binary.

use isingff::report::CrosscheckReport;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_isingff"));
    cmd.args(args).env_remove("ISINGFF_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn correlate_trivial_points() {
    let o = run(&["correlate", "--n", "0", "--t", "0", "--lambda", "1", "--phase", "low", "--method", "toeplitz"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim().parse::<f64>().unwrap(), 1.0);

    let o = run(&["correlate", "--n", "5", "--t", "0.3", "--lambda", "0", "--phase", "low", "--method", "formfactor"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 0.7f64.powf(0.25)).abs() < 1e-15, "{v}");
}

#[test]
fn correlate_json_has_the_value() {
    let o = run(&["correlate", "--n", "1", "--t", "0.3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["value"].as_f64().unwrap() > 0.9);
}

#[test]
fn argument_errors_exit_two() {
    assert_eq!(run(&["correlate", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["correlate", "--n", "0", "--t", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["crosscheck", "--grid", "n=0"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    let o = run_env(&["correlate", "--n", "0", "--t", "0.2"], &[("ISINGFF_THREADS", "zero")]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_env(&["correlate", "--n", "0", "--t", "0.2"], &[("ISINGFF_THREADS", "1")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn crosscheck_example_passes_and_round_trips() {
    let o = run(&["crosscheck", "--grid", "n=0..2,t=0.1:0.5:3,lambda=1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 18);
    for r in reports {
        for g in r["gaps"].as_array().unwrap() {
            assert!(g["abs"].as_f64().unwrap() < 1e-7);
        }
    }
    let typed: Vec<CrosscheckReport> = serde_json::from_str(&text).unwrap();
    assert!(typed.iter().all(CrosscheckReport::pass));
    assert_eq!(serde_json::to_string_pretty(&typed).unwrap() + "\n", text);
}

#[test]
fn crosscheck_failure_exits_one() {
    let o = run(&["crosscheck", "--grid", "n=1,t=0.3,phase=low", "--tol", "1e-17", "--pmax", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn crosscheck_csv() {
    let o = run(&["crosscheck", "--grid", "n=0,t=0.2,phase=low", "--csv", "--pmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(&rdr.headers().unwrap()[4], "kind");
    let kinds: Vec<String> = rdr.records().map(|r| r.unwrap()[4].to_string()).collect();
    assert!(kinds.iter().any(|k| k == "value") && kinds.iter().any(|k| k == "gap"));
}

#[test]
fn kernel_dump_formats() {
    let o = run(&["kernel-dump", "--which", "G", "--t", "0.3", "--size", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.records().count(), 9);

    let o = run(&["kernel-dump", "--which", "appell-low", "--t", "0.3", "--q", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["which"], "appell-low");
    assert_eq!(v["rows"].as_array().unwrap().len(), 16);
}

#[test]
fn sweep_csv() {
    let o = run(&["sweep", "--vary", "t", "--from", "0.1", "--to", "0.5", "--steps", "5", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["phase", "n", "t", "lambda", "method", "value", "uncertainty", "error"]);
    assert_eq!(rdr.records().count(), 5);
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("isingff-cli-test-{}.json", std::process::id()));
    let o = run(&["correlate", "--n", "2", "--t", "0.4", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["value"].is_number());
    std::fs::remove_file(path).ok();
}
