use std::path::Path;
use std::process::{Command, Output};

fn afm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_afm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spectrum_csv_matches_standard_line() {
    let o = afm(&[
        "spectrum", "--potential", "linear:a=1", "--sigma", "2", "--mass", "0", "--nmodel", "harmonic", "--n", "0..3", "--l", "0..3",
        "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "case,n,l,oracle,afm_std,afm_improved,rel_err_std,rel_err_improved");
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 16);
    // l = 0, n = 0 comes first; 2√3
    let e: f64 = rows[0][4].parse().unwrap();
    assert!((e - 12f64.sqrt()).abs() < 1e-12);
}

#[test]
fn no_bound_state_is_a_sentinel_row() {
    let o = afm(&["spectrum", "--potential", "coulomb:a=3", "--sigma", "2", "--mass", "1", "--nmodel", "coulomb", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no_bound_state"));
}

#[test]
fn malformed_flag_exits_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let o = afm(&["spectrum", "--potential", "linear:a=1", "--sigma", "two", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
    let o = afm(&["spectrum", "--potentail", "linear:a=1", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
    let o = afm(&["spectrum", "--potential", "linear:a=-1", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn unknown_names_exit_2() {
    assert_eq!(afm(&["table", "table9"]).status.code(), Some(2));
    assert_eq!(afm(&["check", "everything"]).status.code(), Some(2));
    assert_eq!(afm(&["fit", "ur-yukawa"]).status.code(), Some(2));
    assert_eq!(afm(&["table", "linear_ur", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["table", "funnel_ur", "--format", "json"];
    let (a, b) = (afm(&args), afm(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["tool"], "afm");
    assert_eq!(v["command"], "table");
    assert_eq!(v["rows"].as_array().unwrap().len(), 16);
    let last = &v["rows"][15];
    assert_eq!((last["n"].as_u64(), last["l"].as_u64()), (Some(3), Some(3)));
    assert!((last["afm_std"].as_f64().unwrap() - 9.0774).abs() < 5e-5);
}

#[test]
fn table_first_cells() {
    let o = afm(&["table", "coulomb_rel", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let first = &v["rows"][0];
    assert!((first["oracle"].as_f64().unwrap() - 1.65817).abs() < 5e-5);
    assert!((first["afm_std"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-12);
    assert_eq!(v["summary"]["oracle_vs_reference"]["pass"], true);
}

#[test]
fn output_file_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = afm(&["table", "linear_ur", "--format", "csv", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 17);
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    write(
        &cfg,
        "# linear, ultrarelativistic\npotential = linear:a=1\nsigma = 2\nmass = 0\nn = 0..1\nformat = csv\n",
    );
    let o = afm(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = afm(&["spectrum", "--config", cfg.to_str().unwrap(), "--n", "0..3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["config"]["n"], "0..3");
    assert_eq!(v["config"]["sigma"], "2");
}

#[test]
fn bad_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    write(&cfg, "potential linear\n");
    assert_eq!(afm(&["spectrum", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("missing.conf");
    assert_eq!(afm(&["spectrum", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    let o = afm(&["check", "duality", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["failed"], 0);

    let o = afm(&["check", "scaling", "--corrupt-scale", "1.01", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["summary"]["failed"].as_u64().unwrap() > 0);
    assert!(v["rows"].as_array().unwrap().iter().any(|r| r["pass"] == false));
}

#[test]
fn oracle_reports_convergence() {
    let o = afm(&["oracle", "--potential", "linear:a=1", "--sigma", "2", "--l", "0..1", "--n-max", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    for s in v["summary"]["sectors"].as_array().unwrap() {
        assert!(s["basis_size"].as_u64().unwrap() > 0);
    }
}

#[test]
fn small_fit_runs() {
    let o = afm(&["fit", "ur-powerlaw", "--lambda", "0.5,1,2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    let hi = v["summary"]["standard_max_err_pct_range"][1].as_f64().unwrap();
    assert!((hi - 12.73).abs() < 0.01);
    assert_eq!(afm(&["fit", "ur-powerlaw", "--lambda", "-1"]).status.code(), Some(2));
}
